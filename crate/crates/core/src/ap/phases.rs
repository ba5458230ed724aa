//! Phases 1 and 2: improving a derangement to an optimal assignment.

use super::{diff_values, min_matrix, Assignment, CostMatrix, EPS};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Vertex};

/// Probe widths of phase 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Phase1Config {
    /// Columns probed per row; default `⌊ln n⌋ + 1`.
    pub probe: Option<usize>,
    /// Extra rows tried when the most negative `DIFF` row fails; default `max(1, ⌊ln n⌋)`.
    pub escalation: Option<usize>,
}

/// Intermediate assignments and the runner-up cycles found along the way.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct History {
    /// `D₀, D₁, …` in order.
    pub assignments: Vec<Permutation>,
    /// `(i, C)`: a negative cycle `C` found against `assignments[i]` but not chosen.
    pub alternatives: Vec<(usize, Vec<Vertex>)>,
}

impl History {
    fn start(d: &Permutation) -> Self {
        History { assignments: vec![d.clone()], alternatives: Vec::new() }
    }
}

/// Value of the cycle `c` in the reduced conjugate of `d`.
pub(crate) fn cycle_value(m: &CostMatrix, d: &Permutation, c: &[Vertex]) -> f64 {
    (0..c.len()).map(|t| m.reduced_entry(d, c[t], c[(t + 1) % c.len()])).sum()
}

/// `d·C` where `C` maps each cycle entry to the next.
pub(crate) fn apply_cycle(d: &Permutation, c: &[Vertex]) -> Result<Permutation> {
    d.compose(&Permutation::from_cycles(d.n(), &[c.to_vec()])?)
}

fn canonical_cycle(c: &[Vertex]) -> Vec<Vertex> {
    let i = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    let mut out = c.to_vec();
    out.rotate_left(i);
    out
}

/// Phase 1: repeatedly applies the most negative 2- or 3-cycle found from
/// the rows with the most negative `DIFF`, probing the cheapest columns of
/// `MIN(M)`; stops when neither probe level finds a negative cycle.
pub fn phase1(m: &CostMatrix, d: &Assignment, cfg: &Phase1Config) -> Result<(Assignment, History)> {
    let n = m.n();
    let ln = (n as f64).ln().floor() as usize;
    let probe = cfg.probe.unwrap_or(ln + 1).max(1);
    let escalation = cfg.escalation.unwrap_or(ln.max(1)).max(1);
    let min = min_matrix(m);
    let mut cur = d.perm.clone();
    let mut hist = History::start(&cur);
    loop {
        let inv = cur.inverse();
        let diff = diff_values(m, &min, &cur);
        let mut rows: Vec<Vertex> = (1..=n).filter(|&a| diff[a] < -EPS).collect();
        rows.sort_by(|&x, &y| diff[x].total_cmp(&diff[y]).then(x.cmp(&y)));
        let mut found: Vec<(f64, Vec<Vertex>)> = Vec::new();
        for chunk in [&rows[..rows.len().min(1)], &rows[rows.len().min(1)..rows.len().min(1 + escalation)]] {
            for &a in chunk {
                found.extend(probe_row(m, &min, &cur, &inv, a, probe));
            }
            if !found.is_empty() {
                break;
            }
        }
        if found.is_empty() {
            return Ok((Assignment::new(m, cur)?, hist));
        }
        found.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
        found.dedup_by(|x, y| x.1 == y.1);
        let idx = hist.assignments.len() - 1;
        for (_, c) in found.iter().skip(1) {
            hist.alternatives.push((idx, c.clone()));
        }
        cur = apply_cycle(&cur, &found[0].1)?;
        hist.assignments.push(cur.clone());
    }
}

/// Negative 2- and 3-cycles through row `a` using the cheapest columns.
fn probe_row(m: &CostMatrix, min: &super::MinIndexMatrix, d: &Permutation, inv: &Permutation, a: Vertex, probe: usize) -> Vec<(f64, Vec<Vertex>)> {
    let mut out = Vec::new();
    let cols = |row: Vertex| min.row(row).iter().copied().filter(move |&j| j != d.apply(row)).take(probe);
    for j in cols(a) {
        let b = inv.apply(j);
        if b == a {
            continue;
        }
        let two = [a, b];
        let v = cycle_value(m, d, &two);
        if v < -EPS {
            out.push((v, canonical_cycle(&two)));
        }
        for j2 in cols(b) {
            let c = inv.apply(j2);
            if c == a || c == b {
                continue;
            }
            let three = [a, b, c];
            let v = cycle_value(m, d, &three);
            if v < -EPS {
                out.push((v, canonical_cycle(&three)));
            }
        }
    }
    out
}

/// The `PATH` store of one Floyd–Warshall sweep over the reduced conjugate.
#[derive(Clone, Debug, PartialEq)]
pub struct PathMatrix {
    n: usize,
    /// Reduced conjugate entries (row-major, 0-based).
    weight: Vec<f64>,
    /// Best path values found.
    value: Vec<f64>,
    /// First hop of the recorded path, 0 if none.
    next: Vec<usize>,
    /// The entry was improved to a negative value (path carried further).
    pub italic: Vec<bool>,
    /// Improved at a column already passed, so not extendable this sweep.
    pub underlined: Vec<bool>,
}

impl PathMatrix {
    fn new(m: &CostMatrix, d: &Permutation) -> Self {
        let n = m.n();
        let mut weight = vec![f64::INFINITY; n * n];
        let mut next = vec![0; n * n];
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    let w = m.reduced_entry(d, i, j);
                    weight[(i - 1) * n + (j - 1)] = w;
                    if w.is_finite() {
                        next[(i - 1) * n + (j - 1)] = j;
                    }
                }
            }
        }
        PathMatrix { n, value: weight.clone(), weight, next, italic: vec![false; n * n], underlined: vec![false; n * n] }
    }

    fn idx(&self, i: Vertex, j: Vertex) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    /// Reduced conjugate entry `(i, j)`.
    pub fn weight(&self, i: Vertex, j: Vertex) -> f64 {
        self.weight[self.idx(i, j)]
    }

    /// Recorded path value for `(i, j)`.
    pub fn value(&self, i: Vertex, j: Vertex) -> f64 {
        self.value[self.idx(i, j)]
    }

    /// The recorded path from `i` to `j` (inclusive), if any.
    pub fn reconstruct(&self, i: Vertex, j: Vertex) -> Option<Vec<Vertex>> {
        let mut path = vec![i];
        let mut v = i;
        while v != j {
            let nx = self.next[self.idx(v, j)];
            if nx == 0 || path.len() > self.n {
                return None;
            }
            path.push(nx);
            v = nx;
        }
        Some(path)
    }

    /// Sum of reduced entries along a vertex path.
    pub fn path_value(&self, path: &[Vertex]) -> f64 {
        path.windows(2).map(|w| self.weight(w[0], w[1])).sum()
    }

    /// Entries with a recorded negative value.
    pub fn negative_entries(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n;
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.value(i, j) < -EPS).collect()
    }

    /// One sweep over columns `1..=n`; returns a closed walk of negative
    /// value as soon as `d(i, k) + d(k, i) < 0`.
    fn sweep(&mut self) -> Result<Option<Vec<Vertex>>> {
        let n = self.n;
        for k in 1..=n {
            for i in 1..=n {
                let dik = self.value(i, k);
                if i == k || !dik.is_finite() {
                    continue;
                }
                if dik + self.value(k, i) < -EPS {
                    let broken = || Error::Internal(format!("PATH does not reconstruct {i} → {k} → {i}"));
                    let mut walk = self.reconstruct(i, k).ok_or_else(broken)?;
                    let back = self.reconstruct(k, i).ok_or_else(broken)?;
                    walk.extend_from_slice(&back[1..]);
                    walk.pop();
                    return Ok(Some(walk));
                }
                for j in 1..=n {
                    if j == i || j == k {
                        continue;
                    }
                    let cand = dik + self.value(k, j);
                    let ij = self.idx(i, j);
                    if cand < self.value[ij] - EPS {
                        self.value[ij] = cand;
                        self.next[ij] = self.next[self.idx(i, k)];
                        if cand < -EPS {
                            self.italic[ij] = true;
                            self.underlined[ij] = j < k;
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Splits a closed walk into simple cycles and returns the most negative.
fn negative_simple_cycle(pm: &PathMatrix, walk: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut stack: Vec<Vertex> = Vec::new();
    let mut best: Option<(f64, Vec<Vertex>)> = None;
    let mut consider = |c: Vec<Vertex>| {
        if c.len() >= 2 {
            let mut closed = c.clone();
            closed.push(c[0]);
            let v = pm.path_value(&closed);
            if v < -EPS && best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, c));
            }
        }
    };
    for &v in walk.iter().chain(std::iter::once(&walk[0])) {
        if let Some(p) = stack.iter().position(|&u| u == v) {
            consider(stack.split_off(p));
        }
        stack.push(v);
    }
    best.map(|(_, c)| c)
}

/// What phase 2 did.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase2Report {
    /// Floyd–Warshall sweeps performed.
    pub sweeps: usize,
    /// Negative cycles canceled, in order.
    pub cycles: Vec<Vec<Vertex>>,
    /// Assignments after each cancellation (the input first).
    pub assignments: Vec<Permutation>,
    /// The `PATH` matrix of the final (cycle-free) sweep.
    pub final_path: PathMatrix,
}

/// Phase 2: cancels negative cycles of the reduced conjugate until none
/// remain; the result is an optimal derangement.
pub fn phase2(m: &CostMatrix, d: &Assignment) -> Result<(Assignment, Phase2Report)> {
    let mut cur = d.perm.clone();
    let mut cycles = Vec::new();
    let mut assignments = vec![cur.clone()];
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut pm = PathMatrix::new(m, &cur);
        match pm.sweep()? {
            None => {
                let a = Assignment::new(m, cur)?;
                return Ok((a, Phase2Report { sweeps, cycles, assignments, final_path: pm }));
            }
            Some(walk) => {
                let c = negative_simple_cycle(&pm, &walk).ok_or_else(|| {
                    Error::Internal(format!("closed walk {walk:?} from PATH contains no negative simple cycle (assignment {cur})"))
                })?;
                let before = m.value(&cur);
                let next = apply_cycle(&cur, &c)?;
                if m.value(&next) >= before - EPS / 2.0 {
                    return Err(Error::Internal(format!("cycle {c:?} did not decrease the assignment value")));
                }
                cur = next;
                cycles.push(c);
                assignments.push(cur.clone());
            }
        }
    }
}
