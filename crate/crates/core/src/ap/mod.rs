//! Assignment problem over derangements and TSP approximation.
//!
//! A derangement `D` assigns row `a` to column `D(a)` at cost `d(a, D(a))`.
//! Conjugating by `D` (entry `(i, j)` ↦ `d(i, D(j))`) turns the current
//! assignment into the diagonal, and a cycle `C` of the conjugate matrix
//! corresponds to the new derangement `D·C`.  Subtracting the diagonal from
//! each row gives the *reduced* matrix whose cycle values are exactly the
//! change in assignment value.
//!
//! - [`phase1`]: greedy improvement guided by `MIN(M)` and `DIFF`.
//! - [`phase2`]: negative-cycle canceling with a Floyd–Warshall sweep and a
//!   `PATH` successor matrix, ending at an optimal derangement.
//! - [`phase3`]: tours from the optimal assignment via cycles whose partial
//!   sums stay below the current gap (see [`negative_prefix_start`]).

mod brute;
mod phases;
mod tour;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Vertex};

pub use brute::{brute_force_assignment, brute_force_tour, BRUTE_FORCE_MAX_N};
pub use phases::{phase1, phase2, History, Phase1Config, Phase2Report, PathMatrix};
pub use tour::{bounded_prefix_start, negative_prefix_start, phase3, Phase3Config, Phase3Result};

/// Absolute tolerance for comparing costs.
pub const EPS: f64 = 1e-9;

/// An `n × n` cost matrix; the diagonal is forbidden (`+∞`).
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    n: usize,
    cost: Vec<f64>,
}

impl CostMatrix {
    /// Builds a matrix from rows; diagonal entries are replaced by `+∞`.
    /// Off-diagonal entries may be `+∞` (forbidden) but not NaN or `−∞`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InvalidInput(format!("cost matrix needs n ≥ 2, got {n}")));
        }
        let mut cost = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: row.len() });
            }
            for (j, &c) in row.iter().enumerate() {
                if i != j && (c.is_nan() || c == f64::NEG_INFINITY) {
                    return Err(Error::InvalidInput(format!("entry ({}, {}) is {c}", i + 1, j + 1)));
                }
                cost.push(if i == j { f64::INFINITY } else { c });
            }
        }
        Ok(CostMatrix { n, cost })
    }

    /// Builds a matrix from `f(i, j)` for `i ≠ j` (1-based).
    pub fn from_fn(n: usize, f: impl Fn(Vertex, Vertex) -> f64) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (1..=n).map(|i| (1..=n).map(|j| if i == j { f64::INFINITY } else { f(i, j) }).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Random integer costs in `lo..=hi`.
    pub fn random_integer<R: Rng + ?Sized>(n: usize, lo: i64, hi: i64, rng: &mut R) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi) as f64).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Random symmetric Euclidean instance with integer coordinates in `0..=scale`.
    pub fn random_metric<R: Rng + ?Sized>(n: usize, scale: i64, rng: &mut R) -> Result<Self> {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0..=scale) as f64, rng.gen_range(0..=scale) as f64)).collect();
        Self::from_fn(n, |i, j| {
            let (a, b) = (pts[i - 1], pts[j - 1]);
            ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
        })
    }

    /// Parses CSV: one row per line, comma separated, `inf` allowed; `#` comments.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<f64>> = line
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    match t.to_ascii_lowercase().as_str() {
                        "inf" | "+inf" | "∞" => Ok(f64::INFINITY),
                        _ => t.parse::<f64>().map_err(|e| Error::Parse { line: lineno + 1, message: format!("{t:?}: {e}") }),
                    }
                })
                .collect();
            rows.push(row?);
        }
        Self::from_rows(&rows)
    }

    /// CSV rendering (`inf` on the diagonal).
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n).map(|j| fmt_cost(self.get(i, j))).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    /// Dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `d(i, j)` (1-based).
    pub fn get(&self, i: Vertex, j: Vertex) -> f64 {
        self.cost[(i - 1) * self.n + (j - 1)]
    }

    /// True iff `d(i, j) = d(j, i)` for all pairs.
    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= EPS))
    }

    /// Value of a permutation: `Σ d(a, p(a))`.
    pub fn value(&self, p: &Permutation) -> f64 {
        (1..=self.n).map(|a| self.get(a, p.apply(a))).sum()
    }

    /// `d(i, j)` in the conjugate by `D`: `d(i, D(j))`.
    pub fn conjugate_entry(&self, d: &Permutation, i: Vertex, j: Vertex) -> f64 {
        self.get(i, d.apply(j))
    }

    /// Reduced conjugate entry: `d(i, D(j)) − d(i, D(i))`.
    pub fn reduced_entry(&self, d: &Permutation, i: Vertex, j: Vertex) -> f64 {
        self.get(i, d.apply(j)) - self.get(i, d.apply(i))
    }
}

fn fmt_cost(c: f64) -> String {
    if c.is_infinite() {
        "inf".into()
    } else {
        format!("{c}")
    }
}

impl fmt::Display for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// A derangement and its value.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    /// The fixed-point-free permutation.
    pub perm: Permutation,
    /// `Σ d(a, perm(a))`.
    pub value: f64,
}

impl Assignment {
    /// Wraps a permutation, checking it is a derangement of finite value.
    pub fn new(m: &CostMatrix, perm: Permutation) -> Result<Self> {
        if perm.n() != m.n() {
            return Err(Error::SizeMismatch { expected: m.n(), found: perm.n() });
        }
        if let Some(a) = (1..=m.n()).find(|&a| perm.apply(a) == a) {
            return Err(Error::InvalidInput(format!("{a} is fixed; assignments must be derangements")));
        }
        let value = m.value(&perm);
        if !value.is_finite() {
            return Err(Error::InvalidInput("assignment uses a forbidden entry".into()));
        }
        Ok(Assignment { perm, value })
    }

    /// A uniformly random n-cycle, which is always a derangement.
    pub fn random_ncycle<R: Rng + ?Sized>(m: &CostMatrix, rng: &mut R) -> Result<Self> {
        let mut seq: Vec<Vertex> = (1..=m.n()).collect();
        seq.shuffle(rng);
        let perm = Permutation::from_cycles(m.n(), &[seq])?;
        Self::new(m, perm)
    }
}

/// `MIN(M)`: each row's off-diagonal columns sorted by cost, ties by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinIndexMatrix {
    rows: Vec<Vec<Vertex>>,
}

impl MinIndexMatrix {
    /// Sorted column indices of row `a`.
    pub fn row(&self, a: Vertex) -> &[Vertex] {
        &self.rows[a - 1]
    }
}

/// Builds `MIN(M)`.
pub fn min_matrix(m: &CostMatrix) -> MinIndexMatrix {
    let n = m.n();
    let rows = (1..=n)
        .map(|a| {
            let mut cols: Vec<Vertex> = (1..=n).filter(|&j| j != a).collect();
            cols.sort_by(|&x, &y| m.get(a, x).total_cmp(&m.get(a, y)).then(x.cmp(&y)));
            cols
        })
        .collect();
    MinIndexMatrix { rows }
}

/// The conjugate `D⁻¹M` as an explicit matrix: entry `(i, j)` is `d(i, D(j))`.
pub fn conjugate(m: &CostMatrix, d: &Permutation) -> Vec<Vec<f64>> {
    let n = m.n();
    (1..=n).map(|i| (1..=n).map(|j| m.conjugate_entry(d, i, j)).collect()).collect()
}

/// `DIFF(a) = d(a, MIN(M)(a, 1)) − d(a, D(a))` for every row (index 0 unused); always ≤ 0.
pub fn diff_values(m: &CostMatrix, min: &MinIndexMatrix, d: &Permutation) -> Vec<f64> {
    let mut out = vec![0.0; m.n() + 1];
    for (a, slot) in out.iter_mut().enumerate().skip(1) {
        let best = min.row(a).first().map(|&j| m.get(a, j)).unwrap_or(f64::INFINITY);
        let cur = m.get(a, d.apply(a));
        *slot = if cur.is_infinite() { f64::NEG_INFINITY } else { (best - cur).min(0.0) };
    }
    out
}
