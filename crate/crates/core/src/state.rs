//! The mutable search state: a pseudo-hamilton circuit over the contracted
//! vertex set, stored as an abbreviation of the last materialized circuit.
//!
//! `h_base` is the last materialized circuit and `ORD` numbers its vertices
//! clockwise from vertex 1.  The current circuit `Hᵢ` is an ordered list of
//! segments of consecutive ordinals, each traversed upwards (`+`) or
//! downwards (`−`, produced by rotations).  An ordinal strictly inside an
//! upward segment has its `h_base` successor; every other successor is
//! explicit in the list.  Moves split and reorder segments; a rotation
//! reverses a run of segments; `rebuild` materializes the circuit again.
//!
//! `PSEUDO` holds the pseudo-arc vertices (initial vertices of circuit arcs
//! missing from the graph) ordered by degree, largest first.  `BACKTRACK`
//! holds the inverses of applied steps, newest first.

use std::cmp::Reverse;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{ContractedGraph, Orientation};
use crate::perm::{CircularOrder, MoveKind, MoveSet, NCycle, Vertex};
use crate::random;

/// Random stream used for initial circuits.
const STREAM_H0: u64 = 10;

/// Tuning knobs of a [`HamState`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateConfig {
    /// Rebuild after this many steps; `None` means only on request.
    pub rebuild_interval: Option<usize>,
    /// Maximum BACKTRACK depth; `None` is unbounded.
    pub backtrack_cap: Option<usize>,
}

impl StateConfig {
    /// Rebuild every `⌈√m⌉` steps with the given BACKTRACK depth.
    pub fn for_size(m: usize, backtrack_cap: Option<usize>) -> Self {
        StateConfig { rebuild_interval: Some(((m as f64).sqrt().ceil() as usize).max(1)), backtrack_cap }
    }

    /// Manual rebuilds, unbounded BACKTRACK; used for scripted replays.
    pub fn manual() -> Self {
        StateConfig { rebuild_interval: None, backtrack_cap: None }
    }
}

/// A run of consecutive ordinals traversed from `from` to `to` (either direction).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    /// First ordinal visited.
    pub from: usize,
    /// Last ordinal visited.
    pub to: usize,
}

impl Segment {
    fn len(&self) -> usize {
        self.from.abs_diff(self.to) + 1
    }

    fn contains(&self, o: usize) -> bool {
        self.from.min(self.to) <= o && o <= self.from.max(self.to)
    }

    /// `+1`, `−1`, or 0 for a single ordinal.
    fn step(&self) -> isize {
        (self.to as isize - self.from as isize).signum()
    }

    fn ordinals(&self) -> Box<dyn Iterator<Item = usize>> {
        if self.from <= self.to {
            Box::new(self.from..=self.to)
        } else {
            Box::new((self.to..=self.from).rev())
        }
    }

    fn reversed(&self) -> Segment {
        Segment { from: self.to, to: self.from }
    }
}

/// One step recorded in BACKTRACK.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// A 3-cycle or POTDTC.
    Move(MoveSet),
    /// A rotation by the chord `(a, x)`.
    Rotation { a: Vertex, x: Vertex },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Move(m) => write!(f, "{}", m.kind),
            Step::Rotation { a, x } => write!(f, "R({a} {x})"),
        }
    }
}

/// How the initial circuit was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InitInfo {
    /// The circuit was requested to avoid the graph entirely.
    pub forced_complement_requested: bool,
    /// The request failed and an unconstrained random circuit was used.
    pub fell_back: bool,
}

/// The search state over a contracted graph.
#[derive(Clone, Debug)]
pub struct HamState<'g> {
    cg: &'g ContractedGraph,
    m: usize,
    /// `ord_inv[o]`: vertex with ordinal `o` on `h_base`.
    ord_inv: Vec<Vertex>,
    /// `ord[v]`: ordinal of `v` on `h_base`.
    ord: Vec<usize>,
    segments: Vec<Segment>,
    orient: Vec<Orientation>,
    succ: Vec<Vertex>,
    pred: Vec<Vertex>,
    pos: Vec<usize>,
    pseudo: BTreeSet<(Reverse<usize>, Vertex)>,
    pseudo_key: Vec<Option<usize>>,
    backtrack: VecDeque<Step>,
    cfg: StateConfig,
    iter_count: usize,
    since_rebuild: usize,
}

impl<'g> HamState<'g> {
    /// State whose first circuit is `h0` (over the contracted ids), all r-vertices forward.
    pub fn new(cg: &'g ContractedGraph, h0: &NCycle, cfg: StateConfig) -> Result<Self> {
        Self::with_orientation(cg, h0, vec![Orientation::Forward; cg.m() + 1], cfg)
    }

    /// State with explicit r-vertex orientations (`orientation[0]` unused).
    pub fn with_orientation(cg: &'g ContractedGraph, h0: &NCycle, orientation: Vec<Orientation>, cfg: StateConfig) -> Result<Self> {
        let m = cg.m();
        if m < 3 {
            return Err(Error::InvalidInput(format!("need at least 3 contracted vertices, got {m}")));
        }
        if h0.n() != m {
            return Err(Error::SizeMismatch { expected: m, found: h0.n() });
        }
        if orientation.len() != m + 1 {
            return Err(Error::SizeMismatch { expected: m + 1, found: orientation.len() });
        }
        for (x, &o) in orientation.iter().enumerate().skip(1) {
            if o == Orientation::Reverse && (!cg.is_rvertex(x) || cg.is_directed()) {
                return Err(Error::InvalidInput(format!("vertex {x} cannot be reversed")));
            }
        }
        let mut s = HamState {
            cg,
            m,
            ord_inv: Vec::new(),
            ord: Vec::new(),
            segments: Vec::new(),
            orient: orientation,
            succ: vec![0; m + 1],
            pred: vec![0; m + 1],
            pos: vec![0; m + 1],
            pseudo: BTreeSet::new(),
            pseudo_key: vec![None; m + 1],
            backtrack: VecDeque::new(),
            cfg,
            iter_count: 0,
            since_rebuild: 0,
        };
        s.materialize(&h0.sequence());
        for v in 1..=m {
            s.update_pseudo(v);
        }
        Ok(s)
    }

    /// Random initial state; with `forced_complement` the circuit avoids the graph
    /// entirely when such a circuit can be found, otherwise falls back.
    pub fn init(cg: &'g ContractedGraph, seed: u64, forced_complement: bool, cfg: StateConfig) -> Result<(Self, InitInfo)> {
        let m = cg.m();
        let mut rng = random::rng(seed, STREAM_H0);
        let mut info = InitInfo { forced_complement_requested: forced_complement, fell_back: false };
        let mut h0 = None;
        if forced_complement {
            h0 = complement_circuit(cg, &mut rng);
            info.fell_back = h0.is_none();
        }
        let h0 = h0.unwrap_or_else(|| random::random_ncycle(m, &mut rng));
        Ok((Self::new(cg, &h0, cfg)?, info))
    }

    fn materialize(&mut self, seq_from_one: &[Vertex]) {
        let m = self.m;
        self.ord_inv = std::iter::once(0).chain(seq_from_one.iter().copied()).collect();
        self.ord = vec![0; m + 1];
        for o in 1..=m {
            self.ord[self.ord_inv[o]] = o;
        }
        self.segments = vec![Segment { from: 1, to: m }];
        self.since_rebuild = 0;
        self.refresh();
    }

    /// Recomputes successor, predecessor and position tables from the segments.
    fn refresh(&mut self) {
        let mut prev: Option<Vertex> = None;
        let mut first = 0;
        let mut i = 0;
        for seg in &self.segments {
            for o in seg.ordinals() {
                let v = self.ord_inv[o];
                self.pos[v] = i;
                i += 1;
                match prev {
                    Some(p) => {
                        self.succ[p] = v;
                        self.pred[v] = p;
                    }
                    None => first = v,
                }
                prev = Some(v);
            }
        }
        let last = prev.expect("non-empty circuit");
        self.succ[last] = first;
        self.pred[first] = last;
    }

    // ----- queries -------------------------------------------------------

    /// The contracted graph.
    pub fn graph(&self) -> &'g ContractedGraph {
        self.cg
    }

    /// Number of contracted vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `Hᵢ(v)`.
    pub fn succ(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }

    /// `Hᵢ⁻¹(v)`.
    pub fn pred(&self, v: Vertex) -> Vertex {
        self.pred[v]
    }

    /// `ORD(v)` with respect to the last materialized circuit.
    pub fn ord(&self, v: Vertex) -> usize {
        self.ord[v]
    }

    /// `ORD⁻¹(o)`.
    pub fn ord_inv(&self, o: usize) -> Vertex {
        self.ord_inv[o]
    }

    /// The last materialized circuit `h_base`.
    pub fn h_base(&self) -> NCycle {
        NCycle::from_sequence(&self.ord_inv[1..]).expect("ORD⁻¹ is a permutation")
    }

    /// Orientation of node `v`.
    pub fn orientation(&self, v: Vertex) -> Orientation {
        self.orient[v]
    }

    /// All orientations (index 0 unused).
    pub fn orientations(&self) -> &[Orientation] {
        &self.orient
    }

    /// The current circuit over contracted ids.
    pub fn circuit(&self) -> NCycle {
        NCycle::from_sequence(&self.sequence_from(1)).expect("current circuit is an n-cycle")
    }

    /// Current circuit as a vertex sequence starting at `start`.
    pub fn sequence_from(&self, start: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.m);
        let mut v = start;
        for _ in 0..self.m {
            out.push(v);
            v = self.succ[v];
        }
        out
    }

    /// Current circuit as base-ordinals, starting at ordinal 1.
    pub fn ordinal_sequence(&self) -> Vec<usize> {
        self.sequence_from(self.ord_inv[1]).into_iter().map(|v| self.ord[v]).collect()
    }

    /// The abbreviation's segments, in circuit order.
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Splice triples `(ordinal, successor ordinal, sign)`: every successor
    /// that is explicit in the abbreviation.  The sign is that of the
    /// segment the successor starts.
    pub fn abbreviation_entries(&self) -> Vec<(usize, usize, i8)> {
        let k = self.segments.len();
        let mut out = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            if seg.step() < 0 {
                let ords: Vec<usize> = seg.ordinals().collect();
                for w in ords.windows(2) {
                    out.push((w[0], w[1], -1));
                }
            }
            let next = self.segments[(i + 1) % k];
            let sign = if next.step() < 0 { -1 } else { 1 };
            if !(k == 1 && seg.to == self.m && next.from == 1) {
                out.push((seg.to, next.from, sign));
            }
        }
        out
    }

    /// Successor of ordinal `o` by the abbreviation rules: the `h_base`
    /// successor unless an explicit successor is recorded.
    pub fn successor_ordinal(&self, o: usize) -> usize {
        let k = self.segments.len();
        for (i, seg) in self.segments.iter().enumerate() {
            if seg.contains(o) {
                if o == seg.to {
                    return self.segments[(i + 1) % k].from;
                }
                return if seg.step() > 0 { o + 1 } else { o - 1 };
            }
        }
        unreachable!("segments cover every ordinal")
    }

    /// Abbreviation in ordinal notation, e.g. `(1 5 … 7 2 … 4 8 …)`.
    pub fn render_abbreviation(&self) -> String {
        render_ordinals(&self.ordinal_sequence(), self.m)
    }

    /// Current circuit with node labels, starting at node 1.
    pub fn render_circuit(&self) -> String {
        let labels: Vec<String> = self.sequence_from(1).into_iter().map(|v| self.cg.label(v, self.orient[v])).collect();
        format!("({})", labels.join(" "))
    }

    /// The current circuit expanded to base vertices (edges not checked).
    pub fn expanded(&self) -> Result<NCycle> {
        self.cg.expand_unchecked(&self.circuit(), &self.orient)
    }

    /// True iff `(u, v)` is an arc of the contracted graph under current orientations.
    pub fn is_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.cg.has_arc(u, self.orient[u], v, self.orient[v])
    }

    /// True iff `(v, Hᵢ(v))` is a pseudo-arc.
    pub fn is_pseudo(&self, v: Vertex) -> bool {
        !self.is_arc(v, self.succ[v])
    }

    /// Out-degree of `v`, counting only arcs whose head has its current orientation.
    pub fn degree(&self, v: Vertex) -> usize {
        self.cg.out_arcs(v, self.orient[v]).filter(|&(y, oy)| self.orient[y] == oy).count()
    }

    /// Heads `y` of usable arcs `(v, y)` under current orientations.
    pub fn out_arcs(&self, v: Vertex) -> Vec<Vertex> {
        self.cg.out_arcs(v, self.orient[v]).filter(|&(y, oy)| self.orient[y] == oy).map(|(y, _)| y).collect()
    }

    /// Tails `x` of usable arcs `(x, v)` under current orientations.
    pub fn in_arcs(&self, v: Vertex) -> Vec<Vertex> {
        self.cg.in_arcs(v, self.orient[v]).filter(|&(x, ox)| self.orient[x] == ox).map(|(x, _)| x).collect()
    }

    /// Targets `x` for which the rotation `(v, x)` makes `(v, x)` an arc: the
    /// exit of `x` (after the flip, its entry) is adjacent to the exit of `v`.
    pub fn rotation_targets(&self, v: Vertex) -> Vec<Vertex> {
        if self.cg.is_directed() {
            return Vec::new();
        }
        let flipped = |y: Vertex| if self.cg.is_rvertex(y) { self.orient[y].flip() } else { self.orient[y] };
        self.cg
            .out_arcs(v, self.orient[v])
            .filter(|&(y, oy)| y != v && y != self.succ[v] && oy == flipped(y))
            .map(|(y, _)| y)
            .collect()
    }

    /// Number of pseudo-arc vertices.
    pub fn pseudo_count(&self) -> usize {
        self.pseudo.len()
    }

    /// Pseudo-arc vertices, largest degree first, then by id.
    pub fn pseudo_vertices(&self) -> Vec<Vertex> {
        self.pseudo.iter().map(|&(_, v)| v).collect()
    }

    /// The PSEUDO set as `(degree, vertex)` pairs in priority order.
    pub fn pseudo_entries(&self) -> Vec<(usize, Vertex)> {
        self.pseudo.iter().map(|&(Reverse(d), v)| (d, v)).collect()
    }

    /// A pseudo-arc vertex of greatest degree, ties broken uniformly at random.
    pub fn select_pseudo<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vertex> {
        let &(top, _) = self.pseudo.iter().next()?;
        let ties: Vec<Vertex> = self.pseudo.iter().take_while(|&&(d, _)| d == top).map(|&(_, v)| v).collect();
        Some(ties[rng.gen_range(0..ties.len())])
    }

    /// True iff the current circuit is a hamilton circuit of the contracted graph.
    pub fn is_hamiltonian(&self) -> bool {
        self.pseudo.is_empty()
    }

    /// BACKTRACK, newest entry first.
    pub fn backtrack(&self) -> &VecDeque<Step> {
        &self.backtrack
    }

    /// Number of steps applied.
    pub fn iter_count(&self) -> usize {
        self.iter_count
    }

    /// A 64-bit fingerprint of the circuit and orientations.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0u64;
        for v in 1..=self.m {
            h ^= mix((v as u64) << 32 | self.succ[v] as u64);
            if self.orient[v] == Orientation::Reverse {
                h ^= mix(!(v as u64));
            }
        }
        h
    }

    // ----- moves ---------------------------------------------------------

    /// Witness arcs and SCORE of `kind` if it is admissible, else `None`.
    pub fn candidate(&self, kind: MoveKind) -> Option<MoveSet> {
        if !kind.is_well_formed() || kind.vertices().iter().any(|&v| v == 0 || v > self.m) {
            return None;
        }
        if !kind.is_admissible(self) {
            return None;
        }
        Some(MoveSet::scored(self, kind, |u, v| self.is_arc(u, v)))
    }

    /// SCORE of an admissible move: witness arcs in the graph minus moved arc vertices.
    pub fn score(&self, kind: MoveKind) -> Result<i64> {
        self.candidate(kind).map(|m| m.score).ok_or_else(|| Error::NotAdmissible(kind.to_string()))
    }

    /// Applies an admissible move; returns the decrease in `|PSEUDO|`.
    /// An inadmissible move is rejected and leaves the state unchanged.
    pub fn apply_move(&mut self, kind: MoveKind) -> Result<i64> {
        let before = self.pseudo.len() as i64;
        self.apply_move_inner(kind)?;
        let inverse = self.candidate(kind.inverse()).ok_or_else(|| Error::Internal(format!("inverse of {kind} not admissible")))?;
        self.push_backtrack(Step::Move(inverse));
        self.after_step();
        Ok(before - self.pseudo.len() as i64)
    }

    fn apply_move_inner(&mut self, kind: MoveKind) -> Result<()> {
        if self.candidate(kind).is_none() {
            return Err(Error::NotAdmissible(kind.to_string()));
        }
        let mut verts = kind.vertices();
        verts.sort_by_key(|&v| self.pos[v]);
        for &v in &verts {
            self.split_after(self.ord[v]);
        }
        let end_of = |segs: &[Segment], v: Vertex, ord: &[usize]| segs.iter().position(|s| s.to == ord[v]).expect("cut exists");
        let i0 = end_of(&self.segments, verts[0], &self.ord);
        self.segments.rotate_left(i0 + 1);
        let k = verts.len();
        // Block j runs from just after verts[j] to verts[j + 1].
        let mut bounds = Vec::with_capacity(k);
        let mut start = 0;
        for j in 0..k {
            let end = end_of(&self.segments, verts[(j + 1) % k], &self.ord);
            bounds.push((start, end));
            start = end + 1;
        }
        let index_of = |v: Vertex| verts.iter().position(|&w| w == v).expect("moved vertex");
        let mut new_segments = Vec::with_capacity(self.segments.len());
        let mut j = 0;
        for _ in 0..k {
            let (s, e) = bounds[j];
            new_segments.extend_from_slice(&self.segments[s..=e]);
            let last = verts[(j + 1) % k];
            j = index_of(kind.image(last));
        }
        if j != 0 {
            return Err(Error::Internal(format!("splice of {kind} did not close")));
        }
        self.segments = new_segments;
        self.normalize();
        self.refresh();
        for v in kind.vertices() {
            self.update_pseudo(v);
        }
        Ok(())
    }

    /// Applies the rotation by the chord `(a, x)`: the subpath from `Hᵢ(a)`
    /// through `x` is reversed and its r-vertices flip orientation.
    /// Returns the decrease in `|PSEUDO|`.
    pub fn apply_rotation(&mut self, a: Vertex, x: Vertex) -> Result<i64> {
        let before = self.pseudo.len() as i64;
        let old_succ = self.succ[a];
        self.apply_rotation_inner(a, x)?;
        self.push_backtrack(Step::Rotation { a, x: old_succ });
        self.after_step();
        Ok(before - self.pseudo.len() as i64)
    }

    fn apply_rotation_inner(&mut self, a: Vertex, x: Vertex) -> Result<()> {
        if self.cg.is_directed() {
            return Err(Error::InvalidInput("rotations need an undirected graph".into()));
        }
        if a == 0 || a > self.m || x == 0 || x > self.m {
            return Err(Error::VertexOutOfRange { vertex: a.max(x), n: self.m });
        }
        if x == a || x == self.succ[a] {
            return Err(Error::IdentityRotation { a, x });
        }
        let mut block = Vec::new();
        let mut v = self.succ[a];
        loop {
            block.push(v);
            if v == x {
                break;
            }
            v = self.succ[v];
        }
        self.split_after(self.ord[a]);
        self.split_after(self.ord[x]);
        let ia = self.segments.iter().position(|s| s.to == self.ord[a]).expect("cut after a");
        self.segments.rotate_left(ia + 1);
        let ix = self.segments.iter().position(|s| s.to == self.ord[x]).expect("cut after x");
        let mut reversed: Vec<Segment> = self.segments[..=ix].iter().rev().map(Segment::reversed).collect();
        reversed.extend_from_slice(&self.segments[ix + 1..]);
        self.segments = reversed;
        let mut flipped = Vec::new();
        for &w in &block {
            if self.cg.is_rvertex(w) {
                self.orient[w] = self.orient[w].flip();
                flipped.push(w);
            }
        }
        self.normalize();
        self.refresh();
        self.update_pseudo(a);
        for &w in &block {
            self.update_pseudo(w);
        }
        for y in flipped {
            self.refresh_neighbour_keys(y);
        }
        Ok(())
    }

    /// SCORE of the rotation `(a, x)`, i.e. the decrease in `|PSEUDO|` it would cause.
    ///
    /// Arcs inside the reversed subpath keep their status (both directions
    /// come from the same edge), so only four arcs matter: `(a, Hᵢ(a))` and
    /// `(x, Hᵢ(x))` disappear, `(a, x)` and `(Hᵢ(a), Hᵢ(x))` appear.
    pub fn rotation_score(&self, a: Vertex, x: Vertex) -> Result<i64> {
        if self.cg.is_directed() {
            return Err(Error::InvalidInput("rotations need an undirected graph".into()));
        }
        if x == a || x == self.succ[a] {
            return Err(Error::IdentityRotation { a, x });
        }
        let ha = self.succ[a];
        let hx = self.succ[x];
        let flip = |v: Vertex| if self.cg.is_rvertex(v) { self.orient[v].flip() } else { self.orient[v] };
        let before = self.is_pseudo(a) as i64 + self.is_pseudo(x) as i64;
        let new_ax = self.cg.has_arc(a, self.orient[a], x, flip(x));
        let new_tail = self.cg.has_arc(ha, flip(ha), hx, self.orient[hx]);
        let after = (!new_ax) as i64 + (!new_tail) as i64;
        Ok(before - after)
    }

    /// True iff the rotation generated by the arc `(a, b)` has positive SCORE:
    /// either `b` is a pseudo-arc vertex or `(Hᵢ(a), Hᵢ(b))` becomes an arc.
    pub fn rotation_score_positive(&self, a: Vertex, b: Vertex) -> bool {
        self.rotation_score(a, b).map(|s| s > 0).unwrap_or(false)
    }

    /// Applies a BACKTRACK-style step without recording it.
    fn apply_step_inner(&mut self, step: &Step) -> Result<()> {
        match step {
            Step::Move(m) => self.apply_move_inner(m.kind),
            Step::Rotation { a, x } => self.apply_rotation_inner(*a, *x),
        }
    }

    /// Pops the newest BACKTRACK entry and applies it, restoring the previous circuit.
    pub fn undo_last(&mut self) -> Result<Option<Step>> {
        let Some(step) = self.backtrack.pop_front() else {
            return Ok(None);
        };
        self.apply_step_inner(&step)?;
        self.after_step();
        Ok(Some(step))
    }

    /// Materializes the current circuit as the new `h_base` and clears the abbreviation.
    pub fn rebuild(&mut self) {
        let seq = self.sequence_from(1);
        self.materialize(&seq);
    }

    fn after_step(&mut self) {
        self.iter_count += 1;
        self.since_rebuild += 1;
        if let Some(k) = self.cfg.rebuild_interval {
            if self.since_rebuild >= k {
                self.rebuild();
            }
        }
    }

    fn push_backtrack(&mut self, step: Step) {
        self.backtrack.push_front(step);
        if let Some(cap) = self.cfg.backtrack_cap {
            self.backtrack.truncate(cap);
        }
    }

    // ----- abbreviation plumbing ----------------------------------------

    /// Splits the segment containing ordinal `o` so that `o` ends a segment.
    fn split_after(&mut self, o: usize) {
        let i = self.segments.iter().position(|s| s.contains(o)).expect("ordinal covered");
        let s = self.segments[i];
        if s.to == o {
            return;
        }
        let step = s.step();
        let next = (o as isize + step) as usize;
        self.segments[i] = Segment { from: s.from, to: o };
        self.segments.insert(i + 1, Segment { from: next, to: s.to });
    }

    /// Merges neighbouring segments that continue each other.
    fn normalize(&mut self) {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for &s in &self.segments {
            if let Some(last) = out.last_mut() {
                if let Some(merged) = merge(*last, s) {
                    *last = merged;
                    continue;
                }
            }
            out.push(s);
        }
        if out.len() > 1 {
            if let Some(merged) = merge(out[out.len() - 1], out[0]) {
                out[0] = merged;
                out.pop();
            }
        }
        self.segments = out;
    }

    // ----- PSEUDO plumbing ----------------------------------------------

    fn update_pseudo(&mut self, v: Vertex) {
        if let Some(d) = self.pseudo_key[v].take() {
            self.pseudo.remove(&(Reverse(d), v));
        }
        if self.is_pseudo(v) {
            let d = self.degree(v);
            self.pseudo.insert((Reverse(d), v));
            self.pseudo_key[v] = Some(d);
        }
    }

    /// Re-keys pseudo-arc vertices whose degree may depend on `y`'s orientation.
    fn refresh_neighbour_keys(&mut self, y: Vertex) {
        let mut touched = Vec::new();
        for o in [Orientation::Forward, Orientation::Reverse] {
            touched.extend(self.cg.in_arcs(y, o).map(|(x, _)| x));
        }
        touched.sort_unstable();
        touched.dedup();
        for w in touched {
            if self.pseudo_key[w].is_some() {
                self.update_pseudo(w);
            }
        }
    }

    /// PSEUDO recomputed from scratch.
    pub fn recompute_pseudo(&self) -> Vec<(usize, Vertex)> {
        let mut set: BTreeSet<(Reverse<usize>, Vertex)> = BTreeSet::new();
        for v in 1..=self.m {
            if self.is_pseudo(v) {
                set.insert((Reverse(self.degree(v)), v));
            }
        }
        set.into_iter().map(|(Reverse(d), v)| (d, v)).collect()
    }

    /// Verifies every internal invariant; used by tests and debug runs.
    pub fn check_integrity(&self) -> Result<()> {
        for v in 1..=self.m {
            if self.ord_inv[self.ord[v]] != v {
                return Err(Error::Internal(format!("ORD⁻¹(ORD({v})) ≠ {v}")));
            }
        }
        let covered: usize = self.segments.iter().map(Segment::len).sum();
        if covered != self.m {
            return Err(Error::Internal(format!("segments cover {covered} of {} ordinals", self.m)));
        }
        let seq = self.sequence_from(1);
        let mut seen = vec![false; self.m + 1];
        for &v in &seq {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Internal("current circuit is not an n-cycle".into()));
            }
        }
        for o in 1..=self.m {
            let v = self.ord_inv[o];
            if self.ord[self.succ[v]] != self.successor_ordinal(o) {
                return Err(Error::Internal(format!("successor rule disagrees at ordinal {o}")));
            }
        }
        if self.pseudo_entries() != self.recompute_pseudo() {
            return Err(Error::Internal("incremental PSEUDO differs from recomputation".into()));
        }
        Ok(())
    }
}

impl CircularOrder for HamState<'_> {
    fn order_len(&self) -> usize {
        self.m
    }
    fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }
    fn successor(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }
}

fn merge(a: Segment, b: Segment) -> Option<Segment> {
    let step = b.from as isize - a.to as isize;
    if step.abs() != 1 {
        return None;
    }
    let ok = |s: &Segment| s.step() == 0 || s.step() == step;
    (ok(&a) && ok(&b)).then_some(Segment { from: a.from, to: b.to })
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Renders an ordinal sequence in abbreviation notation: maximal runs of
/// three or more consecutive ordinals print as `first … last`, and a final
/// upward run ending at `m` prints as `first …`.
pub fn render_ordinals(seq: &[usize], m: usize) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let mut j = i;
        if i + 1 < seq.len() {
            let step = seq[i + 1] as isize - seq[i] as isize;
            if step.abs() == 1 {
                while j + 1 < seq.len() && seq[j + 1] as isize - seq[j] as isize == step {
                    j += 1;
                }
            }
        }
        let run = &seq[i..=j];
        let is_tail = j == seq.len() - 1 && run.len() >= 3 && run[run.len() - 1] == m && run[0] < run[run.len() - 1];
        if is_tail {
            parts.push(format!("{} …", run[0]));
        } else if run.len() >= 3 {
            parts.push(format!("{} … {}", run[0], run[run.len() - 1]));
        } else {
            parts.extend(run.iter().map(|o| o.to_string()));
        }
        i = j + 1;
    }
    format!("({})", parts.join(" "))
}

/// Tries to build a circuit none of whose arcs lie in the graph.
fn complement_circuit<R: Rng + ?Sized>(cg: &ContractedGraph, rng: &mut R) -> Option<NCycle> {
    let m = cg.m();
    let arc = |u: Vertex, v: Vertex| cg.has_arc(u, Orientation::Forward, v, Orientation::Forward);
    for _ in 0..64 {
        let h = random::random_ncycle(m, rng);
        let mut seq = h.sequence();
        // Repair pass: swap a bad successor with a random later vertex.
        for _ in 0..8 * m {
            let bad: Vec<usize> = (0..m).filter(|&i| arc(seq[i], seq[(i + 1) % m])).collect();
            if bad.is_empty() {
                return NCycle::from_sequence(&seq).ok();
            }
            let i = bad[rng.gen_range(0..bad.len())];
            let j = rng.gen_range(0..m);
            seq.swap((i + 1) % m, j);
        }
    }
    None
}
