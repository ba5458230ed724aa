//! A tour-improvement heuristic for the symmetric TSP built from rotations
//! and admissible 3-cycles.
//!
//! A rotation by `[x, y]` is *good* when
//! `w[x, y] + w[H(x), H(y)] < w[x, H(x)] + w[y, H(y)]`; a 3-cycle is good
//! when its three new arcs weigh less than the three arcs they replace.
//! After sweeping good rotations to a local optimum, each iteration tries a
//! good admissible 3-cycle, or a 3-cycle followed by a rotation whose
//! combined change is an improvement.  The run stops after `⌈n ln n⌉`
//! consecutive iterations without a new best tour.

use rand::seq::SliceRandom;

use crate::ap::{CostMatrix, EPS};
use crate::error::{Error, Result};
use crate::perm::{is_admissible_3cycle, NCycle, Vertex};
use crate::random;

/// Random stream for the heuristic.
const STREAM_TSP: u64 = 12;

/// Parameters of [`tsp_heuristic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TspConfig {
    /// Seed of the initial tour and the vertex order.
    pub seed: u64,
    /// Improvement-free iterations before stopping; default `⌈n ln n⌉`.
    pub window: Option<usize>,
    /// 3-cycles per vertex also tried with a follow-up rotation; default `⌈ln n⌉ + 1`.
    pub combo_width: Option<usize>,
}

/// Result of [`tsp_heuristic`].
#[derive(Clone, Debug, PartialEq)]
pub struct TspResult {
    /// The best tour.
    pub tour: NCycle,
    /// Its weight.
    pub weight: f64,
    /// The best-tour queue: each new best weight in order (non-increasing).
    pub history: Vec<f64>,
    /// Iterations performed.
    pub iterations: usize,
}

/// Weight of a tour.
pub fn tour_weight(w: &CostMatrix, t: &NCycle) -> f64 {
    (1..=t.n()).map(|v| w.get(v, t.succ(v))).sum()
}

fn rotation_gain(w: &CostMatrix, h: &NCycle, x: Vertex, y: Vertex) -> f64 {
    let (hx, hy) = (h.succ(x), h.succ(y));
    w.get(x, hx) + w.get(y, hy) - w.get(x, y) - w.get(hx, hy)
}

fn three_cycle_gain(w: &CostMatrix, h: &NCycle, a: Vertex, b: Vertex, c: Vertex) -> f64 {
    let old = w.get(a, h.succ(a)) + w.get(b, h.succ(b)) + w.get(c, h.succ(c));
    let new = w.get(a, h.succ(b)) + w.get(b, h.succ(c)) + w.get(c, h.succ(a));
    old - new
}

fn apply_three_cycle(h: &NCycle, a: Vertex, b: Vertex, c: Vertex) -> NCycle {
    let s = |v: Vertex| if v == a { b } else if v == b { c } else if v == c { a } else { v };
    let mut seq = Vec::with_capacity(h.n());
    let mut v = 1;
    for _ in 0..h.n() {
        seq.push(v);
        v = h.succ(s(v));
    }
    NCycle::from_sequence(&seq).expect("admissible 3-cycle keeps an n-cycle")
}

/// Applies good rotations until none remains; returns the total gain.
fn rotation_sweeps(w: &CostMatrix, h: &mut NCycle) -> f64 {
    let n = h.n();
    let mut total = 0.0;
    loop {
        let mut improved = false;
        for x in 1..=n {
            for y in 1..=n {
                if y == x || y == h.succ(x) || h.succ(y) == x {
                    continue;
                }
                let g = rotation_gain(w, h, x, y);
                if g > EPS {
                    *h = h.rotate(x, y).expect("non-trivial rotation");
                    total += g;
                    improved = true;
                }
            }
        }
        if !improved {
            return total;
        }
    }
}

/// Best rotation gain available on `h`, with the rotation.
fn best_rotation(w: &CostMatrix, h: &NCycle) -> Option<(f64, Vertex, Vertex)> {
    let n = h.n();
    let mut best: Option<(f64, Vertex, Vertex)> = None;
    for x in 1..=n {
        for y in 1..=n {
            if y == x || y == h.succ(x) || h.succ(y) == x {
                continue;
            }
            let g = rotation_gain(w, h, x, y);
            if best.is_none_or(|(bg, _, _)| g > bg) {
                best = Some((g, x, y));
            }
        }
    }
    best
}

/// Runs the heuristic on a symmetric cost matrix.
pub fn tsp_heuristic(w: &CostMatrix, cfg: &TspConfig) -> Result<TspResult> {
    let n = w.n();
    if n < 3 {
        return Err(Error::InvalidInput(format!("a tour needs n ≥ 3, got {n}")));
    }
    if !w.is_symmetric() {
        return Err(Error::InvalidInput("the heuristic needs a symmetric matrix".into()));
    }
    let mut rng = random::rng(cfg.seed, STREAM_TSP);
    let mut h = random::random_ncycle(n, &mut rng);
    let mut weight = tour_weight(w, &h);
    let mut history = vec![weight];
    rotation_sweeps(w, &mut h);
    weight = tour_weight(w, &h);
    if weight < history[0] - EPS {
        history.push(weight);
    }
    let lnn = (n as f64).ln();
    let window = cfg.window.unwrap_or((n as f64 * lnn).ceil() as usize).max(1);
    let width = cfg.combo_width.unwrap_or(lnn.ceil() as usize + 1).max(1);
    let mut order: Vec<Vertex> = (1..=n).collect();
    let mut since_best = 0;
    let mut iterations = 0;
    while since_best < window {
        if since_best % n == 0 {
            order.shuffle(&mut rng);
        }
        let a = order[since_best % n];
        iterations += 1;
        since_best += 1;
        // (a) a good admissible 3-cycle through `a`.
        let mut good: Option<(f64, Vertex, Vertex)> = None;
        let mut others: Vec<(f64, Vertex, Vertex)> = Vec::new();
        for b in 1..=n {
            for c in 1..=n {
                if b == a || c == a || b == c || !is_admissible_3cycle(&h, a, b, c) {
                    continue;
                }
                let g = three_cycle_gain(w, &h, a, b, c);
                if g > EPS {
                    if good.is_none_or(|(bg, _, _)| g > bg) {
                        good = Some((g, b, c));
                    }
                } else {
                    others.push((g, b, c));
                }
            }
        }
        let mut next: Option<NCycle> = None;
        if let Some((_, b, c)) = good {
            next = Some(apply_three_cycle(&h, a, b, c));
        } else {
            // (b) a 3-cycle whose loss is recovered by a following rotation.
            others.sort_by(|x, y| y.0.total_cmp(&x.0));
            for &(g, b, c) in others.iter().take(width) {
                let t = apply_three_cycle(&h, a, b, c);
                if let Some((rg, x, y)) = best_rotation(w, &t) {
                    if g + rg > EPS {
                        next = Some(t.rotate(x, y).expect("non-trivial rotation"));
                        break;
                    }
                }
            }
        }
        if let Some(mut t) = next {
            rotation_sweeps(w, &mut t);
            let tw = tour_weight(w, &t);
            if tw < weight - EPS {
                h = t;
                weight = tw;
                history.push(weight);
                since_best = 0;
            }
        }
    }
    Ok(TspResult { tour: h, weight, history, iterations })
}
