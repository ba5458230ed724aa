//! Seeded generators for the random graph and digraph ensembles.
//!
//! All randomness comes from ChaCha8 keyed by `(seed, stream)`: the counter
//! based generator lets independent sub-generators (out-choices, in-choices,
//! initial circuits, …) draw from disjoint streams of the same seed, so
//! every output is a pure function of its inputs.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BaseGraph, Digraph, Graph};
use crate::perm::{NCycle, Vertex};

/// Stream ids used by the generators in this module.
mod stream {
    pub const EDGE_ORDER: u64 = 1;
    pub const OUT_CHOICES: u64 = 2;
    pub const IN_CHOICES: u64 = 3;
}

/// The crate's random generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A uniformly random n-cycle on `1..=n`.
pub fn random_ncycle<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> NCycle {
    let mut seq: Vec<Vertex> = (1..=n).collect();
    seq.shuffle(rng);
    NCycle::from_sequence(&seq).expect("a shuffle of 1..=n is a cycle")
}

/// The supported ensembles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// Edges of `Kₙ` in random order until `δ ≥ 2` (`G_{m*}`).
    Boll,
    /// Arcs in random order until every in- and out-degree is ≥ 1 (`D_{m*}`).
    FriezeBoll,
    /// `k` random out-arcs and `k` random in-arcs per vertex (`D_{k-in,k-out}`).
    KInKOut(usize),
    /// `i` random out-choices per vertex, symmetrized (`R_i`).
    RegularOut(usize),
    /// `m` uniformly random edges.
    ErdosRenyiM(usize),
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ensemble::Boll => write!(f, "boll"),
            Ensemble::FriezeBoll => write!(f, "frieze-boll"),
            Ensemble::KInKOut(k) => write!(f, "{k}-in-{k}-out"),
            Ensemble::RegularOut(i) => write!(f, "regular-out-{i}"),
            Ensemble::ErdosRenyiM(m) => write!(f, "gnm-{m}"),
        }
    }
}

/// An ensemble, a size and a seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    /// Which ensemble.
    pub kind: Ensemble,
    /// Number of vertices.
    pub n: usize,
    /// Seed.
    pub seed: u64,
}

impl EnsembleSpec {
    /// Draws the instance.
    pub fn generate(&self) -> Result<BaseGraph> {
        Ok(match self.kind {
            Ensemble::Boll => boll_graph(self.n, self.seed)?.into(),
            Ensemble::FriezeBoll => frieze_boll_digraph(self.n, self.seed)?.into(),
            Ensemble::KInKOut(k) => k_in_k_out(self.n, k, self.seed)?.into(),
            Ensemble::RegularOut(i) => regular_out_graph(self.n, i, self.seed)?.into(),
            Ensemble::ErdosRenyiM(m) => erdos_renyi_m(self.n, m, self.seed)?.into(),
        })
    }

    /// The provenance comment written by `gen`.
    pub fn provenance(&self) -> String {
        format!("# ensemble={} n={} seed={}", self.kind, self.n, self.seed)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidInput(format!("ensembles need n ≥ 3, got {n}")))
    } else {
        Ok(())
    }
}

/// The Boll graph `G_{m*}`: edges of `Kₙ` added in seeded random order until `δ ≥ 2`.
pub fn boll_graph(n: usize, seed: u64) -> Result<Graph> {
    check_n(n)?;
    let mut edges: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    edges.shuffle(&mut rng(seed, stream::EDGE_ORDER));
    let mut g = Graph::new(n);
    let mut deficient = n;
    for (u, v) in edges {
        g.add_edge(u, v)?;
        for w in [u, v] {
            if g.degree(w) == 2 {
                deficient -= 1;
            }
        }
        if deficient == 0 {
            break;
        }
    }
    Ok(g)
}

/// The Frieze–Boll digraph `D_{m*}`: arcs in seeded random order until every
/// vertex has in- and out-degree ≥ 1.
pub fn frieze_boll_digraph(n: usize, seed: u64) -> Result<Digraph> {
    check_n(n)?;
    let mut arcs: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    arcs.shuffle(&mut rng(seed, stream::EDGE_ORDER));
    let mut d = Digraph::new(n);
    let mut deficient = 2 * n;
    for (u, v) in arcs {
        d.add_arc(u, v)?;
        if d.out_degree(u) == 1 {
            deficient -= 1;
        }
        if d.in_degree(v) == 1 {
            deficient -= 1;
        }
        if deficient == 0 {
            break;
        }
    }
    Ok(d)
}

/// `k` distinct vertices other than `v`, sampled without replacement.
fn choose_others<R: rand::Rng>(n: usize, v: Vertex, k: usize, r: &mut R) -> Vec<Vertex> {
    let others: Vec<Vertex> = (1..=n).filter(|&w| w != v).collect();
    others.choose_multiple(r, k).copied().collect()
}

/// `D_{k-in,k-out}`: each vertex picks `k` out-arcs and `k` in-arcs; the union is returned.
pub fn k_in_k_out(n: usize, k: usize, seed: u64) -> Result<Digraph> {
    check_n(n)?;
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!("need 1 ≤ k < n, got k = {k}, n = {n}")));
    }
    let mut d = Digraph::new(n);
    let mut out_rng = rng(seed, stream::OUT_CHOICES);
    let mut in_rng = rng(seed, stream::IN_CHOICES);
    for v in 1..=n {
        for w in choose_others(n, v, k, &mut out_rng) {
            d.add_arc(v, w)?;
        }
        for w in choose_others(n, v, k, &mut in_rng) {
            d.add_arc(w, v)?;
        }
    }
    Ok(d)
}

/// `R_i`: each vertex picks `i` out-neighbours; every choice becomes an edge.
pub fn regular_out_graph(n: usize, i: usize, seed: u64) -> Result<Graph> {
    check_n(n)?;
    if i == 0 || i >= n {
        return Err(Error::InvalidInput(format!("need 1 ≤ i < n, got i = {i}, n = {n}")));
    }
    let mut g = Graph::new(n);
    let mut r = rng(seed, stream::OUT_CHOICES);
    for v in 1..=n {
        for w in choose_others(n, v, i, &mut r) {
            g.add_edge(v, w)?;
        }
    }
    Ok(g)
}

/// `G(n, m)`: `m` distinct uniformly random edges.
pub fn erdos_renyi_m(n: usize, m: usize, seed: u64) -> Result<Graph> {
    check_n(n)?;
    let total = n * (n - 1) / 2;
    if m > total {
        return Err(Error::InvalidInput(format!("m = {m} exceeds {total} possible edges")));
    }
    let mut edges: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    edges.shuffle(&mut rng(seed, stream::EDGE_ORDER));
    Graph::from_edges(n, &edges[..m])
}
