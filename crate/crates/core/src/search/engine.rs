//! The iteration loop shared by all search variants.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{note_init, Algo, Outcome, SearchConfig, SearchResult, SearchStats};
use crate::error::{Error, Result};
use crate::graph::ContractedGraph;
use crate::perm::{MoveKind, MoveSet, Vertex};
use crate::random;
use crate::state::{HamState, StateConfig, Step};

/// Random stream for search decisions.
const STREAM_SEARCH: u64 = 11;

/// A step identity used for the no-repeat rule on non-improving steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum StepKey {
    Move(MoveKind),
    Rotation(Vertex, Vertex),
}

struct Engine<'g> {
    cg: &'g ContractedGraph,
    st: HamState<'g>,
    algo: Algo,
    cfg: SearchConfig,
    state_cfg: StateConfig,
    rng: ChaCha8Rng,
    k_arcs: usize,
    pairs: usize,
    focus: Option<Vertex>,
    /// Non-improving steps already taken from a given circuit.
    tabu: HashSet<(u64, StepKey)>,
    stats: SearchStats,
    trace: Vec<String>,
    iter: usize,
}

/// Runs `algo` on an already contracted graph.
pub fn run_on(cg: &ContractedGraph, cfg: &SearchConfig, algo: Algo) -> Result<SearchResult> {
    run_on_cancellable(cg, cfg, algo, &AtomicBool::new(false))
}

/// [`run_on`], stopping with [`Outcome::Cancelled`] once `cancel` is set.
pub fn run_on_cancellable(cg: &ContractedGraph, cfg: &SearchConfig, algo: Algo, cancel: &AtomicBool) -> Result<SearchResult> {
    if algo == Algo::D && !cg.is_directed() {
        return Err(Error::InvalidInput("Algorithm D needs a digraph".into()));
    }
    if algo != Algo::D && cg.is_directed() {
        return Err(Error::InvalidInput(format!("algorithm {algo} needs an undirected graph")));
    }
    let m = cg.m();
    let cap = if algo == Algo::D { None } else { Some(1) };
    let mut state_cfg = StateConfig::for_size(m, cap);
    if cfg.rebuild_interval.is_some() {
        state_cfg.rebuild_interval = cfg.rebuild_interval;
    }
    let (st, info) = HamState::init(cg, cfg.seed, cfg.forced_complement_h0, state_cfg)?;
    let mut e = Engine {
        cg,
        st,
        algo,
        cfg: cfg.clone(),
        state_cfg,
        rng: random::rng(cfg.seed, STREAM_SEARCH),
        k_arcs: cfg.arcs_budget(m),
        pairs: cfg.pair_budget(m),
        focus: None,
        tabu: HashSet::new(),
        stats: SearchStats { m, ..SearchStats::default() },
        trace: Vec::new(),
        iter: 0,
    };
    note_init(&mut e.stats, info);
    let per_phase = cfg.phase_budget(m);
    let total = per_phase.saturating_mul(cfg.phases.max(1));
    let mut cancelled = false;
    while e.iter < total && !e.st.is_hamiltonian() {
        if cancel.load(Ordering::Relaxed) {
            cancelled = true;
            break;
        }
        e.iter += 1;
        e.iteration()?;
        if e.iter == per_phase {
            e.stats.phase1_iterations = per_phase;
        }
        if cfg.check_integrity {
            e.st.check_integrity()?;
        }
    }
    if e.stats.phase1_iterations == 0 {
        e.stats.phase1_iterations = e.iter.min(per_phase);
    }
    e.stats.final_pseudo = e.st.pseudo_count();
    let outcome = if e.st.is_hamiltonian() {
        Outcome::Circuit(cg.expand_circuit(&e.st.circuit(), e.st.orientations())?)
    } else if cancelled {
        Outcome::Cancelled
    } else {
        Outcome::Exhausted
    };
    Ok(SearchResult {
        outcome,
        iterations: e.iter,
        net_successes: e.stats.successes as i64 - e.stats.failures as i64,
        stats: e.stats,
        trace: e.trace,
    })
}

impl<'g> Engine<'g> {
    fn iteration(&mut self) -> Result<()> {
        let a = match self.focus.take().filter(|&v| self.st.is_pseudo(v)) {
            Some(v) => v,
            None => self.st.select_pseudo(&mut self.rng).expect("not yet hamiltonian"),
        };
        let fp = self.st.fingerprint();
        let mut cands = self.candidates(a);
        let head = match self.st.backtrack().front() {
            Some(Step::Move(m)) if self.algo != Algo::D => Some(m.kind),
            _ => None,
        };
        cands.retain(|c| {
            head.is_none_or(|h| !h.same_permutation(&c.kind))
                && (c.score > 0 || !self.tabu.contains(&(fp, StepKey::Move(c.kind.canonical()))))
        });
        let best = self.pick_best(&cands);
        match best {
            Some(m) if m.score > 0 => return self.apply_move(m, fp),
            _ => {}
        }
        if self.algo == Algo::D {
            return match best {
                Some(m) => self.apply_move(m, fp),
                None => self.backtrack(),
            };
        }
        // All scores are zero, or nothing admissible was found.
        if self.algo == Algo::GNoR && self.st.degree(a) == 2 {
            if let Some(x) = self.pick_rotation(a, fp, |_, _| 0) {
                return self.apply_rotation(a, x, fp);
            }
        }
        let prefer_zero = self.cfg.prefer_zero_move_over_rotation && best.is_some();
        if !prefer_zero {
            if let Some(x) = self.positive_rotation(a) {
                return self.apply_rotation(a, x, fp);
            }
        }
        if self.algo != Algo::GHeur {
            if let Some(m) = best {
                return self.apply_move(m, fp);
            }
        }
        let choice = if self.algo == Algo::GHeur {
            self.pick_rotation(a, fp, |s, x| s.degree(s.succ(x)))
        } else {
            self.pick_rotation(a, fp, |s, x| s.degree(x))
        };
        match choice {
            Some(x) => self.apply_rotation(a, x, fp),
            None => {
                self.stats.failures += 1;
                self.log_line("none", 0);
                Ok(())
            }
        }
    }

    // ----- candidate generation -----------------------------------------

    fn sample(&mut self, mut v: Vec<Vertex>) -> Vec<Vertex> {
        let k = self.k_arcs.min(v.len());
        v.partial_shuffle(&mut self.rng, k);
        v.truncate(k);
        v
    }

    fn push(&self, out: &mut Vec<MoveSet>, seen: &mut HashSet<MoveKind>, kind: MoveKind) {
        if !kind.is_well_formed() || !seen.insert(kind.canonical()) {
            return;
        }
        if let Some(m) = self.st.candidate(kind) {
            out.push(m);
        }
    }

    /// Admissible 3-cycles and POTDTCs guided by arcs out of `a`, out of the
    /// vertices they reach, into `Hᵢ(a)`, and out of other pseudo-arc vertices.
    fn candidates(&mut self, a: Vertex) -> Vec<MoveSet> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let ha = self.st.succ(a);
        let outs: Vec<Vertex> = self.st.out_arcs(a).into_iter().filter(|&y| y != ha).collect();
        let outs = self.sample(outs);
        let ins = self.st.in_arcs(ha).into_iter().filter(|&x| x != a).collect();
        let ins = self.sample(ins);
        for &y in &outs {
            let b = self.st.pred(y);
            let zs = self.sample(self.st.out_arcs(b));
            for z in zs {
                let c = self.st.pred(z);
                self.push(&mut out, &mut seen, MoveKind::ThreeCycle { a, b, c });
            }
            for &c in &ins {
                self.push(&mut out, &mut seen, MoveKind::ThreeCycle { a, b, c });
            }
        }
        if out.iter().any(|m| m.score > 0) {
            return out;
        }
        // POTDTCs pairing `a` with other pseudo-arc vertices.
        let mut others: Vec<Vertex> = self.st.pseudo_vertices().into_iter().filter(|&d| d != a).collect();
        others.shuffle(&mut self.rng);
        let mut budget = self.pairs;
        'pairs: for &d in others.iter().take(self.k_arcs) {
            let ds = self.sample(self.st.out_arcs(d));
            for &y in &outs {
                let c = self.st.pred(y);
                for &z in &ds {
                    if budget == 0 {
                        break 'pairs;
                    }
                    budget -= 1;
                    let e = self.st.pred(z);
                    self.push(&mut out, &mut seen, MoveKind::Potdtc { a, c, b: d, d: e });
                }
            }
        }
        if self.st.pseudo_count() == 1 {
            self.endgame_probe(a, &outs, &mut out, &mut seen);
        }
        out
    }

    /// With a single pseudo-arc vertex: for a 2-cycle `(a b)` of SCORE one,
    /// pair it with arcs out of interior vertices of the shorter segment.
    fn endgame_probe(&mut self, a: Vertex, outs: &[Vertex], out: &mut Vec<MoveSet>, seen: &mut HashSet<MoveKind>) {
        let m = self.st.m();
        let ha = self.st.succ(a);
        for &y in outs {
            let b = self.st.pred(y);
            if b == a || !self.st.is_arc(b, ha) {
                continue;
            }
            let pa = crate::perm::CircularOrder::position(&self.st, a);
            let pb = crate::perm::CircularOrder::position(&self.st, b);
            let forward = (pb + m - pa) % m;
            let (from, len) = if forward <= m - forward { (a, forward) } else { (b, m - forward) };
            if len < 2 {
                continue;
            }
            let mut interior = Vec::with_capacity(len - 1);
            let mut v = self.st.succ(from);
            for _ in 1..len {
                interior.push(v);
                v = self.st.succ(v);
            }
            for x in self.sample(interior) {
                for z in self.sample(self.st.out_arcs(x)) {
                    let e = self.st.pred(z);
                    self.push(out, seen, MoveKind::Potdtc { a, c: b, b: x, d: e });
                }
            }
        }
    }

    /// Highest SCORE; then moves touching a degree-2 vertex; then the
    /// largest vertex degree; remaining ties uniformly at random.
    fn pick_best(&mut self, cands: &[MoveSet]) -> Option<MoveSet> {
        let key = |m: &MoveSet| {
            let vs = m.kind.vertices();
            let deg2 = vs.iter().any(|&v| self.st.degree(v) == 2);
            let maxdeg = vs.iter().map(|&v| self.st.degree(v)).max().unwrap_or(0);
            (m.score, deg2, maxdeg)
        };
        let mut best: Option<((i64, bool, usize), &MoveSet)> = None;
        let mut ties = 0u32;
        for m in cands {
            let k = key(m);
            match &best {
                Some((bk, _)) if k < *bk => {}
                Some((bk, _)) if k == *bk => {
                    ties += 1;
                    if self.rng.gen_range(0..ties) == 0 {
                        best = Some((k, m));
                    }
                }
                _ => {
                    best = Some((k, m));
                    ties = 1;
                }
            }
        }
        best.map(|(_, m)| m.clone())
    }

    /// A positive-SCORE rotation out of `a` (all targets for the heuristic
    /// variant, a sample otherwise), best score first.
    fn positive_rotation(&mut self, a: Vertex) -> Option<Vertex> {
        let targets = self.st.rotation_targets(a);
        let targets = if self.algo == Algo::GHeur { targets } else { self.sample(targets) };
        let mut best: Option<(i64, Vertex)> = None;
        for x in targets {
            let s = self.st.rotation_score(a, x).unwrap_or(0);
            if s > 0 && best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, x));
            }
        }
        best.map(|(_, x)| x)
    }

    /// A rotation target out of `a` maximizing `weight`, avoiding repeats
    /// from the same circuit; ties at random.
    fn pick_rotation(&mut self, a: Vertex, fp: u64, weight: impl Fn(&HamState<'g>, Vertex) -> usize) -> Option<Vertex> {
        let mut targets: Vec<Vertex> = self.st.rotation_targets(a);
        targets.retain(|&x| !self.tabu.contains(&(fp, StepKey::Rotation(a, x))));
        targets.shuffle(&mut self.rng);
        targets.into_iter().max_by_key(|&x| weight(&self.st, x))
    }

    // ----- applying steps -----------------------------------------------

    fn apply_move(&mut self, m: MoveSet, fp: u64) -> Result<()> {
        if m.score <= 0 {
            self.tabu.insert((fp, StepKey::Move(m.kind.canonical())));
        }
        let delta = self.st.apply_move(m.kind)?;
        if delta > 0 {
            self.stats.successes += 1;
        } else {
            self.stats.zero_moves += 1;
        }
        self.focus = m.kind.vertices().into_iter().filter(|&v| self.st.is_pseudo(v)).max_by_key(|&v| self.st.degree(v));
        self.log_line(&m.kind.to_string(), m.score);
        Ok(())
    }

    fn apply_rotation(&mut self, a: Vertex, x: Vertex, fp: u64) -> Result<()> {
        let old_succ = self.st.succ(a);
        let delta = self.st.apply_rotation(a, x)?;
        if delta <= 0 {
            self.tabu.insert((fp, StepKey::Rotation(a, x)));
        }
        self.stats.rotations += 1;
        if delta > 0 {
            self.stats.successes += 1;
        }
        self.focus = Some(old_succ).filter(|&v| self.st.is_pseudo(v));
        self.log_line(&format!("R({a} {x})"), delta);
        Ok(())
    }

    fn backtrack(&mut self) -> Result<()> {
        self.stats.failures += 1;
        match self.st.undo_last()? {
            Some(step) => {
                self.stats.backtracks += 1;
                let undone = match &step {
                    Step::Move(m) => StepKey::Move(m.kind.inverse().canonical()),
                    Step::Rotation { a, x } => StepKey::Rotation(*a, *x),
                };
                self.tabu.insert((self.st.fingerprint(), undone));
                self.log_line(&format!("backtrack {step}"), 0);
            }
            None => {
                self.stats.reseeds += 1;
                let h0 = random::random_ncycle(self.cg.m(), &mut self.rng);
                self.st = HamState::new(self.cg, &h0, self.state_cfg)?;
                self.log_line("reseed", 0);
            }
        }
        self.focus = None;
        Ok(())
    }

    fn log_line(&mut self, what: &str, score: i64) {
        if self.cfg.record_trace || log::log_enabled!(log::Level::Trace) {
            let line = format!("iter={} move={} score={} pseudo={}", self.iter, what, score, self.st.pseudo_count());
            log::trace!("{line}");
            if self.cfg.record_trace {
                self.trace.push(line);
            }
        }
    }
}
