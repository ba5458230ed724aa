//! Exhaustive solvers for small instances, used by the `--oracle` checks.

use super::{CostMatrix, EPS};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Vertex};

/// Largest `n` accepted by the exhaustive solvers.
pub const BRUTE_FORCE_MAX_N: usize = 10;

fn check(m: &CostMatrix) -> Result<usize> {
    let n = m.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::InvalidInput(format!("exhaustive search is limited to n ≤ {BRUTE_FORCE_MAX_N}, got {n}")));
    }
    Ok(n)
}

/// The cheapest derangement, by enumerating all of them.
pub fn brute_force_assignment(m: &CostMatrix) -> Result<(Permutation, f64)> {
    let n = check(m)?;
    let mut images: Vec<Vertex> = vec![0; n];
    let mut used = vec![false; n + 1];
    let mut best: Option<(Vec<Vertex>, f64)> = None;
    fn rec(m: &CostMatrix, i: usize, acc: f64, images: &mut Vec<Vertex>, used: &mut [bool], best: &mut Option<(Vec<Vertex>, f64)>) {
        let n = images.len();
        if i > n {
            if best.as_ref().is_none_or(|(_, b)| acc < *b - EPS) {
                *best = Some((images.clone(), acc));
            }
            return;
        }
        for j in 1..=n {
            if j == i || used[j] || !m.get(i, j).is_finite() {
                continue;
            }
            used[j] = true;
            images[i - 1] = j;
            rec(m, i + 1, acc + m.get(i, j), images, used, best);
            used[j] = false;
        }
    }
    rec(m, 1, 0.0, &mut images, &mut used, &mut best);
    let (images, value) = best.ok_or_else(|| Error::InvalidInput("no finite-cost derangement exists".into()))?;
    Ok((Permutation::from_images(&images)?, value))
}

/// The cheapest n-cycle (tour), by enumerating all of them from vertex 1.
pub fn brute_force_tour(m: &CostMatrix) -> Result<(Permutation, f64)> {
    let n = check(m)?;
    if n < 2 {
        return Err(Error::InvalidInput("a tour needs n ≥ 2".into()));
    }
    let mut seq: Vec<Vertex> = (1..=n).collect();
    let mut best: Option<(Vec<Vertex>, f64)> = None;
    fn rec(m: &CostMatrix, k: usize, acc: f64, seq: &mut Vec<Vertex>, best: &mut Option<(Vec<Vertex>, f64)>) {
        let n = seq.len();
        if k == n {
            let total = acc + m.get(seq[n - 1], seq[0]);
            if total.is_finite() && best.as_ref().is_none_or(|(_, b)| total < *b - EPS) {
                *best = Some((seq.clone(), total));
            }
            return;
        }
        for i in k..n {
            seq.swap(k, i);
            let step = m.get(seq[k - 1], seq[k]);
            if step.is_finite() {
                rec(m, k + 1, acc + step, seq, best);
            }
            seq.swap(k, i);
        }
    }
    rec(m, 1, 0.0, &mut seq, &mut best);
    let (seq, value) = best.ok_or_else(|| Error::InvalidInput("no finite-cost tour exists".into()))?;
    let mut images = vec![0; n];
    for w in 0..n {
        images[seq[w] - 1] = seq[(w + 1) % n];
    }
    Ok((Permutation::from_images(&images)?, value))
}
