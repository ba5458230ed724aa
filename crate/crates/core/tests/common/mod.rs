//! Test-side oracles shared by the integration tests.
//!
//! Everything here is written independently of the library's own
//! algorithms: permutations are plain image vectors, admissibility is
//! decided by counting cycles, and optima come from exhaustive enumeration.
#![allow(dead_code)]

pub mod transcripts;

use hamperm::graph::Graph;
use hamperm::NCycle;

/// Image vector (index 0 unused) of the n-cycle listed by `seq`.
pub fn images_of_cycle(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut img = vec![0; n + 1];
    for i in 0..n {
        img[seq[i]] = seq[(i + 1) % n];
    }
    img
}

/// Image vector of a product of disjoint cycles on `1..=n`.
pub fn images_of_cycles(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut img: Vec<usize> = (0..=n).collect();
    for c in cycles {
        for i in 0..c.len() {
            img[c[i]] = c[(i + 1) % c.len()];
        }
    }
    img
}

/// `(h ∘ s)(v) = h(s(v))`.
pub fn compose(h: &[usize], s: &[usize]) -> Vec<usize> {
    (0..h.len()).map(|v| if v == 0 { 0 } else { h[s[v]] }).collect()
}

/// True iff the image vector is a single cycle through all of `1..=n`.
pub fn is_single_cycle(img: &[usize]) -> bool {
    let n = img.len() - 1;
    let mut v = 1;
    for step in 1..=n {
        v = img[v];
        if v == 1 {
            return step == n;
        }
    }
    false
}

/// All n-cycles on `1..=n` as sequences starting at 1.
pub fn all_ncycles(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (2..=n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut s = vec![1];
        s.extend_from_slice(p);
        out.push(s);
    });
    out
}

/// Calls `f` on every permutation of `xs` (Heap-free recursive swap order).
pub fn permute(xs: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Minimum of `Σ cost[i][p(i)]` over derangements `p` of `0..n` (0-based matrix).
pub fn min_derangement(cost: &[Vec<i64>]) -> i64 {
    let n = cost.len();
    let mut best = i64::MAX;
    let mut cols: Vec<usize> = (0..n).collect();
    permute(&mut cols, 0, &mut |p| {
        if p.iter().enumerate().all(|(i, &j)| i != j) {
            best = best.min(p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum());
        }
    });
    best
}

/// Minimum tour length over all hamilton cycles of a complete digraph (0-based matrix).
pub fn min_tour(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    let mut best = f64::INFINITY;
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut total = cost[0][p[0]] + cost[p[p.len() - 1]][0];
        for w in p.windows(2) {
            total += cost[w[0]][w[1]];
        }
        best = best.min(total);
    });
    best
}

/// Bellman–Ford negative-cycle detection on a dense 0-based weight matrix
/// (`None` = no arc).
pub fn has_negative_cycle(w: &[Vec<Option<i64>>]) -> bool {
    let n = w.len();
    // A virtual source at distance 0 to every node.
    let mut dist = vec![0i64; n];
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if let Some(c) = w[u][v] {
                    if dist[u] + c < dist[v] {
                        dist[v] = dist[u] + c;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return false;
        }
    }
    true
}

/// True iff every consecutive pair of `c` (cyclically) is an edge of `g`.
pub fn is_hamilton_circuit(g: &Graph, c: &NCycle) -> bool {
    c.n() == g.n() && c.sequence().iter().all(|&v| g.has_edge(v, c.succ(v)))
}

/// All hamilton cycles of a small graph, as sequences starting at 1 (each
/// undirected cycle appears in both directions).
pub fn hamilton_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    all_ncycles(n).into_iter().filter(|s| (0..n).all(|i| g.has_edge(s[i], s[(i + 1) % n]))).collect()
}

/// True iff the chords `(p, q)` and `(r, s)` cross strictly inside a circle
/// whose points are listed clockwise by `pos` (position of each vertex).
pub fn chords_cross(pos: &[usize], p: usize, q: usize, r: usize, s: usize) -> bool {
    if p == r || p == s || q == r || q == s || p == q || r == s {
        return false;
    }
    let inside = |x: usize| {
        let (lo, hi) = (pos[p].min(pos[q]), pos[p].max(pos[q]));
        lo < pos[x] && pos[x] < hi
    };
    inside(r) != inside(s)
}
