//! Phase 3: tours from an optimal assignment through bounded cycles.
//!
//! With `σ` optimal, the reduced conjugate of `σ` has no negative cycle, so
//! every tour `σ·p` costs `|σ|` plus the (non-negative) values of the
//! cycles of `p`.  A tour cheaper than the best known tour `T` therefore
//! uses only cycles of value below the gap `m = |T| − |σ|`, and each such
//! cycle has a rotation whose partial sums all stay below `m`
//! ([`bounded_prefix_start`]).  Enumerating cycles with that prefix bound
//! and combining disjoint ones is thus exhaustive: when the search completes
//! without finding an improvement, `T` is optimal.

use std::collections::HashSet;

use rand::SeedableRng;

use super::phases::{apply_cycle, phase1, History, Phase1Config};
use super::{Assignment, CostMatrix, EPS};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Vertex};

/// A start index from which every partial sum of the cyclic sequence is negative.
///
/// Requires a negative total.  The start is the last position at which the
/// running prefix sum attains its maximum.
pub fn negative_prefix_start(values: &[f64]) -> Result<usize> {
    bounded_prefix_start(values, 0.0)
}

/// A start index from which every cyclic partial sum is below `bound`.
///
/// For `bound ≥ 0` such a start exists whenever the total is below `bound`.
/// For negative bounds it may not exist (e.g. `[−1, 0.5, −1, 0.5]` with
/// bound `−0.9`), and an error is returned when none does.
pub fn bounded_prefix_start(values: &[f64], bound: f64) -> Result<usize> {
    let n = values.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty cycle".into()));
    }
    let total: f64 = values.iter().sum();
    if total >= bound {
        return Err(Error::InvalidInput(format!("cycle total {total} is not below {bound}")));
    }
    let ok = |s: usize| {
        let mut acc = 0.0;
        (0..n).all(|j| {
            acc += values[(s + j) % n];
            acc < bound
        })
    };
    if bound >= 0.0 {
        let mut best = 0;
        let mut best_prefix = 0.0;
        let mut prefix = 0.0;
        for (s, v) in values.iter().enumerate() {
            if prefix >= best_prefix {
                best_prefix = prefix;
                best = s;
            }
            prefix += v;
        }
        if ok(best) {
            return Ok(best);
        }
    }
    (0..n).find(|&s| ok(s)).ok_or_else(|| Error::InvalidInput(format!("no start keeps every partial sum below {bound}")))
}

/// Limits and seed of phase 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase3Config {
    /// Seed for the phase-1 restarts.
    pub seed: u64,
    /// Maximum number of bounded cycles collected per round.
    pub max_cycles: usize,
    /// Maximum number of nodes in the combination search per round.
    pub max_nodes: usize,
}

impl Default for Phase3Config {
    fn default() -> Self {
        Phase3Config { seed: 0, max_cycles: 200_000, max_nodes: 5_000_000 }
    }
}

/// Result of phase 3.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase3Result {
    /// The best tour found (an n-cycle).
    pub tour: Permutation,
    /// Its value.
    pub value: f64,
    /// The assignment lower bound `|σ|`.
    pub lower_bound: f64,
    /// Set when the exhaustive bounded-cycle search proved the tour optimal.
    pub optimal: bool,
    /// The successive gaps `m₀ > m₁ > …`.
    pub gaps: Vec<f64>,
    /// Bound-descent rounds performed.
    pub rounds: usize,
    /// A search limit was hit, so optimality could not be certified.
    pub truncated: bool,
}

/// Phase 3: an initial tour from the history (or phase-1 restarts), then
/// bound descent through combinations of bounded cycles.
pub fn phase3(m: &CostMatrix, ap: &Assignment, history: &History, cfg: &Phase3Config) -> Result<Phase3Result> {
    let n = m.n();
    let sigma = &ap.perm;
    let lower = ap.value;
    if sigma.is_ncycle() {
        return Ok(Phase3Result { tour: sigma.clone(), value: lower, lower_bound: lower, optimal: true, gaps: vec![0.0], rounds: 0, truncated: false });
    }
    let mut best = initial_tour(m, history, cfg)?;
    let mut best_value = m.value(&best);
    let mut gaps = Vec::new();
    let mut rounds = 0;
    let mut truncated = false;
    let mut optimal = false;
    while rounds < n.max(2) {
        rounds += 1;
        let gap = best_value - lower;
        gaps.push(gap);
        if gap <= EPS {
            optimal = true;
            break;
        }
        let (cycles, cut) = bounded_cycles(m, sigma, gap - EPS, cfg.max_cycles);
        truncated |= cut;
        let search = combine(m, sigma, &cycles, gap - EPS, cfg.max_nodes);
        truncated |= search.truncated;
        match search.best {
            Some((_, tour)) => {
                best_value = m.value(&tour);
                best = tour;
            }
            None => {
                optimal = !truncated;
                break;
            }
        }
    }
    Ok(Phase3Result { tour: best, value: best_value, lower_bound: lower, optimal, gaps, rounds, truncated })
}

/// The cheapest n-cycle among the history's assignments and their
/// runner-up cycles; phase-1 restarts from random n-cycles if none.
fn initial_tour(m: &CostMatrix, history: &History, cfg: &Phase3Config) -> Result<Permutation> {
    let n = m.n();
    let mut tours: Vec<Permutation> = history.assignments.iter().filter(|p| p.is_ncycle()).cloned().collect();
    for (i, c) in &history.alternatives {
        if let Some(base) = history.assignments.get(*i) {
            let p = apply_cycle(base, c)?;
            if p.is_ncycle() {
                tours.push(p);
            }
        }
    }
    if tours.is_empty() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..n {
            let start = Assignment::random_ncycle(m, &mut rng)?;
            let (_, h) = phase1(m, &start, &Phase1Config::default())?;
            tours.extend(h.assignments.into_iter().filter(|p| p.is_ncycle()));
        }
    }
    tours.into_iter().min_by(|a, b| m.value(a).total_cmp(&m.value(b))).ok_or_else(|| Error::Internal("no initial tour".into()))
}

/// All simple cycles of the reduced conjugate whose partial sums from some
/// start all stay below `bound`, each once (smallest vertex first).
fn bounded_cycles(m: &CostMatrix, sigma: &Permutation, bound: f64, limit: usize) -> (Vec<(f64, Vec<Vertex>)>, bool) {
    let n = m.n();
    let w = |i: Vertex, j: Vertex| m.reduced_entry(sigma, i, j);
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut out = Vec::new();
    let mut truncated = false;
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n + 1];
    for s in 1..=n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        dfs(&w, n, bound, limit, 0.0, &mut path, &mut on_path, &mut seen, &mut out, &mut truncated);
        on_path[s] = false;
        if truncated {
            break;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    (out, truncated)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    w: &impl Fn(Vertex, Vertex) -> f64,
    n: usize,
    bound: f64,
    limit: usize,
    sum: f64,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    seen: &mut HashSet<Vec<Vertex>>,
    out: &mut Vec<(f64, Vec<Vertex>)>,
    truncated: &mut bool,
) {
    let last = *path.last().expect("non-empty path");
    let s = path[0];
    if path.len() >= 2 {
        let close = sum + w(last, s);
        if close < bound {
            let i = (0..path.len()).min_by_key(|&i| path[i]).unwrap_or(0);
            let mut c = path.clone();
            c.rotate_left(i);
            if seen.insert(c.clone()) {
                out.push((close, c));
                if out.len() >= limit {
                    *truncated = true;
                    return;
                }
            }
        }
    }
    for v in 1..=n {
        if on_path[v] || v == last {
            continue;
        }
        let next = sum + w(last, v);
        if next < bound {
            path.push(v);
            on_path[v] = true;
            dfs(w, n, bound, limit, next, path, on_path, seen, out, truncated);
            on_path[v] = false;
            path.pop();
            if *truncated {
                return;
            }
        }
    }
}

struct Combination {
    best: Option<(f64, Permutation)>,
    truncated: bool,
}

/// The cheapest set of pairwise disjoint cycles with total below `bound`
/// turning `σ` into an n-cycle.
fn combine(m: &CostMatrix, sigma: &Permutation, cycles: &[(f64, Vec<Vertex>)], bound: f64, max_nodes: usize) -> Combination {
    let n = m.n();
    let mut st = Combination { best: None, truncated: false };
    let mut used = vec![false; n + 1];
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0usize;
    let mut limit = bound;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        m: &CostMatrix,
        sigma: &Permutation,
        cycles: &[(f64, Vec<Vertex>)],
        from: usize,
        total: f64,
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        nodes: &mut usize,
        max_nodes: usize,
        limit: &mut f64,
        st: &mut Combination,
    ) {
        *nodes += 1;
        if *nodes > max_nodes {
            st.truncated = true;
            return;
        }
        if !chosen.is_empty() {
            let cs: Vec<Vec<Vertex>> = chosen.iter().map(|&i| cycles[i].1.clone()).collect();
            if let Ok(p) = Permutation::from_cycles(m.n(), &cs) {
                if let Ok(t) = sigma.compose(&p) {
                    if t.is_ncycle() && total < *limit {
                        *limit = total;
                        st.best = Some((total, t));
                    }
                }
            }
        }
        for i in from..cycles.len() {
            let (v, c) = &cycles[i];
            if total + v >= *limit {
                break;
            }
            if c.iter().any(|&x| used[x]) {
                continue;
            }
            for &x in c {
                used[x] = true;
            }
            chosen.push(i);
            rec(m, sigma, cycles, i + 1, total + v, used, chosen, nodes, max_nodes, limit, st);
            chosen.pop();
            for &x in c {
                used[x] = false;
            }
            if st.truncated {
                return;
            }
        }
    }
    rec(m, sigma, cycles, 0, 0.0, &mut used, &mut chosen, &mut nodes, max_nodes, &mut limit, &mut st);
    st
}
