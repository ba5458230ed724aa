//! Contraction of forced paths into r-vertices.
//!
//! In a graph, both edges at a degree-2 vertex lie on every hamilton circuit;
//! in a digraph, the only arc out of a vertex of out-degree 1 (or into a
//! vertex of in-degree 1) does.  Maximal paths of such forced edges/arcs are
//! collapsed into r-vertices `v₁v₂…v_r`.  Edges that can no longer lie on a
//! hamilton circuit are deleted: the chord `[v₁, v_r]` closing a path, and the
//! remaining edges at a vertex already carrying two forced edges (in a
//! digraph: other arcs out of a vertex with a forced out-arc, other arcs into
//! a vertex with a forced in-arc).  Deletions can create new forced edges, so
//! the process runs to a fixed point.

use std::fmt;

use super::{BaseGraph, Digraph, Graph};
use crate::error::{Error, Result};
use crate::perm::{NCycle, Vertex};

/// Traversal direction of an r-vertex; ordinary vertices are always `Forward`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    /// Traversed `v₁ → v_r`.
    #[default]
    Forward,
    /// Traversed `v_r → v₁`.
    Reverse,
}

impl Orientation {
    /// The opposite orientation.
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }
}

/// A graph or digraph after r-vertex contraction.
///
/// Contracted vertices are numbered `1..=m`, ordered by the first vertex of
/// their path; an undirected path is stored starting at its smaller endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedGraph {
    base: BaseGraph,
    work: BaseGraph,
    nodes: Vec<Vec<Vertex>>,
    node_of: Vec<(usize, usize)>,
    deleted: Vec<(Vertex, Vertex)>,
}

/// Result of contracting a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// The usual case.
    Contracted(ContractedGraph),
    /// The forced edges already form a hamilton circuit.
    TriviallyHamiltonian(NCycle),
}

impl ContractedGraph {
    /// The trivial contraction: every vertex is its own node, no edge deleted.
    pub fn identity(base: BaseGraph) -> Self {
        let n = base.n();
        let nodes = (0..=n).map(|v| if v == 0 { Vec::new() } else { vec![v] }).collect();
        let node_of = (0..=n).map(|v| (v, 0)).collect();
        ContractedGraph { work: base.clone(), base, nodes, node_of, deleted: Vec::new() }
    }

    /// Contracts a graph (δ ≥ 3 input gives the identity contraction).
    pub fn contract(g: &Graph) -> Result<Contraction> {
        let n = g.n();
        if n < 3 {
            return Err(Error::NotHamiltonian(format!("{n} vertices")));
        }
        let mut work = g.clone();
        let mut deleted = Vec::new();
        loop {
            let mut changed = false;
            for v in 1..=n {
                if work.degree(v) < 2 {
                    return Err(Error::NotHamiltonian(format!("vertex {v} has degree {}", work.degree(v))));
                }
            }
            let forced = |w: &Graph, u: Vertex, v: Vertex| w.degree(u) == 2 || w.degree(v) == 2;
            for v in 1..=n {
                let fv: Vec<Vertex> = work.neighbors(v).iter().copied().filter(|&u| forced(&work, v, u)).collect();
                if fv.len() > 2 {
                    return Err(Error::NotHamiltonian(format!("vertex {v} carries {} forced edges", fv.len())));
                }
                if fv.len() == 2 && work.degree(v) > 2 {
                    let extra: Vec<Vertex> = work.neighbors(v).iter().copied().filter(|u| !fv.contains(u)).collect();
                    for u in extra {
                        work.remove_edge(v, u);
                        deleted.push((v.min(u), v.max(u)));
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            let (paths, cycles) = forced_components(n, |v| {
                work.neighbors(v).iter().copied().filter(|&u| forced(&work, v, u)).collect()
            });
            if let Some(cycle) = cycles.into_iter().next() {
                if cycle.len() == n {
                    return Ok(Contraction::TriviallyHamiltonian(NCycle::from_sequence(&cycle)?));
                }
                let mut component = cycle;
                component.sort_unstable();
                return Err(Error::ContractionCycle { component });
            }
            for p in &paths {
                let (a, b) = (p[0], p[p.len() - 1]);
                if p.len() < n && work.remove_edge(a, b) {
                    deleted.push((a.min(b), a.max(b)));
                    changed = true;
                }
            }
            if !changed {
                let paths = paths
                    .into_iter()
                    .map(|mut p| {
                        if p[0] > p[p.len() - 1] {
                            p.reverse();
                        }
                        p
                    })
                    .collect();
                deleted.sort_unstable();
                return Ok(Contraction::Contracted(Self::assemble(g.clone().into(), work.into(), paths, deleted)));
            }
        }
    }

    /// Contracts a digraph (all in/out-degrees ≥ 2 gives the identity contraction).
    pub fn contract_digraph(d: &Digraph) -> Result<Contraction> {
        let n = d.n();
        if n < 2 {
            return Err(Error::NotHamiltonian(format!("{n} vertices")));
        }
        let mut work = d.clone();
        let mut deleted = Vec::new();
        loop {
            let mut changed = false;
            for v in 1..=n {
                if work.out_degree(v) == 0 || work.in_degree(v) == 0 {
                    return Err(Error::NotHamiltonian(format!("vertex {v} has no out- or in-arc")));
                }
            }
            let forced = |w: &Digraph, u: Vertex, v: Vertex| w.out_degree(u) == 1 || w.in_degree(v) == 1;
            for v in 1..=n {
                let fo: Vec<Vertex> = work.out_neighbors(v).iter().copied().filter(|&u| forced(&work, v, u)).collect();
                if fo.len() > 1 {
                    return Err(Error::NotHamiltonian(format!("vertex {v} has {} forced out-arcs", fo.len())));
                }
                if fo.len() == 1 && work.out_degree(v) > 1 {
                    let extra: Vec<Vertex> = work.out_neighbors(v).iter().copied().filter(|&u| u != fo[0]).collect();
                    for u in extra {
                        work.remove_arc(v, u);
                        deleted.push((v, u));
                    }
                    changed = true;
                }
                let fi: Vec<Vertex> = work.in_neighbors(v).iter().copied().filter(|&u| forced(&work, u, v)).collect();
                if fi.len() > 1 {
                    return Err(Error::NotHamiltonian(format!("vertex {v} has {} forced in-arcs", fi.len())));
                }
                if fi.len() == 1 && work.in_degree(v) > 1 {
                    let extra: Vec<Vertex> = work.in_neighbors(v).iter().copied().filter(|&u| u != fi[0]).collect();
                    for u in extra {
                        work.remove_arc(u, v);
                        deleted.push((u, v));
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Every vertex now has at most one forced out-arc and one forced in-arc.
            let mut next = vec![0; n + 1];
            let mut has_pred = vec![false; n + 1];
            for (v, slot) in next.iter_mut().enumerate().skip(1) {
                if let Some(&u) = work.out_neighbors(v).iter().find(|&&u| forced(&work, v, u)) {
                    *slot = u;
                    has_pred[u] = true;
                }
            }
            let mut seen = vec![false; n + 1];
            let mut paths = Vec::new();
            for v in 1..=n {
                if next[v] != 0 && !has_pred[v] {
                    let mut p = vec![v];
                    seen[v] = true;
                    let mut w = next[v];
                    while w != 0 {
                        seen[w] = true;
                        p.push(w);
                        w = next[w];
                    }
                    paths.push(p);
                }
            }
            for v in 1..=n {
                if next[v] != 0 && !seen[v] {
                    let mut cycle = vec![v];
                    seen[v] = true;
                    let mut w = next[v];
                    while w != v {
                        seen[w] = true;
                        cycle.push(w);
                        w = next[w];
                    }
                    if cycle.len() == n {
                        let start = cycle.iter().position(|&x| x == 1).expect("cycle covers vertex 1");
                        cycle.rotate_left(start);
                        return Ok(Contraction::TriviallyHamiltonian(NCycle::from_sequence(&cycle)?));
                    }
                    cycle.sort_unstable();
                    return Err(Error::ContractionCycle { component: cycle });
                }
            }
            for p in &paths {
                let (a, b) = (p[0], p[p.len() - 1]);
                if p.len() < n && work.remove_arc(b, a) {
                    deleted.push((b, a));
                    changed = true;
                }
            }
            if !changed {
                deleted.sort_unstable();
                return Ok(Contraction::Contracted(Self::assemble(d.clone().into(), work.into(), paths, deleted)));
            }
        }
    }

    fn assemble(base: BaseGraph, work: BaseGraph, paths: Vec<Vec<Vertex>>, deleted: Vec<(Vertex, Vertex)>) -> Self {
        let n = base.n();
        let mut covered = vec![false; n + 1];
        let mut nodes: Vec<Vec<Vertex>> = paths;
        for p in &nodes {
            for &v in p {
                covered[v] = true;
            }
        }
        nodes.extend((1..=n).filter(|&v| !covered[v]).map(|v| vec![v]));
        nodes.sort_by_key(|p| p[0]);
        nodes.insert(0, Vec::new());
        let mut node_of = vec![(0, 0); n + 1];
        for (x, p) in nodes.iter().enumerate().skip(1) {
            for (i, &v) in p.iter().enumerate() {
                node_of[v] = (x, i);
            }
        }
        ContractedGraph { base, work, nodes, node_of, deleted }
    }

    /// Number of contracted vertices `m`.
    pub fn m(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The original input graph.
    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    /// The input graph minus the edges deleted by contraction.
    pub fn work(&self) -> &BaseGraph {
        &self.work
    }

    /// Edges (or arcs) deleted by contraction.
    pub fn deleted(&self) -> &[(Vertex, Vertex)] {
        &self.deleted
    }

    /// True for contracted digraphs.
    pub fn is_directed(&self) -> bool {
        self.base.is_directed()
    }

    /// Path of node `x` in canonical orientation.
    pub fn path(&self, x: usize) -> &[Vertex] {
        &self.nodes[x]
    }

    /// True iff node `x` is an r-vertex (a path of two or more vertices).
    pub fn is_rvertex(&self, x: usize) -> bool {
        self.nodes[x].len() > 1
    }

    /// Node containing base vertex `v`, with `v`'s index on the node's path.
    pub fn node_of(&self, v: Vertex) -> (usize, usize) {
        self.node_of[v]
    }

    /// Base vertex through which the circuit enters `x`.
    pub fn entry(&self, x: usize, o: Orientation) -> Vertex {
        let p = &self.nodes[x];
        match o {
            Orientation::Forward => p[0],
            Orientation::Reverse => p[p.len() - 1],
        }
    }

    /// Base vertex through which the circuit leaves `x`.
    pub fn exit(&self, x: usize, o: Orientation) -> Vertex {
        self.entry(x, o.flip())
    }

    /// True iff `(x, y)` is an arc of the contracted graph for the given orientations.
    pub fn has_arc(&self, x: usize, ox: Orientation, y: usize, oy: Orientation) -> bool {
        x != y && self.work.has_arc(self.exit(x, ox), self.entry(y, oy))
    }

    /// Orientation under which base vertex `v` is the entry of its node.
    fn entry_orientation(&self, v: Vertex) -> Option<(usize, Orientation)> {
        let (y, i) = self.node_of[v];
        let len = self.nodes[y].len();
        if i == 0 {
            Some((y, Orientation::Forward))
        } else if i == len - 1 && !self.is_directed() {
            Some((y, Orientation::Reverse))
        } else {
            None
        }
    }

    /// Arcs leaving `x` (oriented `ox`): each head `y` with the orientation `y` must have.
    pub fn out_arcs(&self, x: usize, ox: Orientation) -> impl Iterator<Item = (usize, Orientation)> + '_ {
        self.work
            .out_neighbors(self.exit(x, ox))
            .iter()
            .filter_map(move |&u| self.entry_orientation(u))
            .filter(move |&(y, _)| y != x)
    }

    /// Arcs entering `y` (oriented `oy`): each tail `x` with the orientation `x` must have.
    pub fn in_arcs(&self, y: usize, oy: Orientation) -> impl Iterator<Item = (usize, Orientation)> + '_ {
        self.work
            .in_neighbors(self.entry(y, oy))
            .iter()
            .filter_map(move |&w| {
                let (x, i) = self.node_of[w];
                let len = self.nodes[x].len();
                if i == len - 1 {
                    Some((x, Orientation::Forward))
                } else if i == 0 && !self.is_directed() {
                    Some((x, Orientation::Reverse))
                } else {
                    None
                }
            })
            .filter(move |&(x, _)| x != y)
    }

    /// Display label of node `x`: `7`, `4-6-9`, or `9-6-4` when reversed.
    pub fn label(&self, x: usize, o: Orientation) -> String {
        let mut p: Vec<String> = self.nodes[x].iter().map(|v| v.to_string()).collect();
        if o == Orientation::Reverse {
            p.reverse();
        }
        p.join("-")
    }

    /// Looks up a node by label, returning the orientation the label spells.
    pub fn node_by_label(&self, label: &str) -> Option<(usize, Orientation)> {
        let vs: Vec<Vertex> = label.split('-').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
        let first = *vs.first()?;
        if first == 0 || first > self.base.n() {
            return None;
        }
        let (x, _) = self.node_of[first];
        let p = &self.nodes[x];
        if vs == *p {
            Some((x, Orientation::Forward))
        } else if vs.iter().rev().eq(p.iter()) {
            Some((x, Orientation::Reverse))
        } else {
            None
        }
    }

    /// Replaces each node of `circuit` by its path in the given orientation,
    /// without checking edges.
    pub fn expand_unchecked(&self, circuit: &NCycle, orientation: &[Orientation]) -> Result<NCycle> {
        if circuit.n() != self.m() {
            return Err(Error::SizeMismatch { expected: self.m(), found: circuit.n() });
        }
        let mut seq = Vec::with_capacity(self.base.n());
        for x in circuit.sequence() {
            let o = orientation.get(x).copied().unwrap_or_default();
            match o {
                Orientation::Forward => seq.extend(self.nodes[x].iter().copied()),
                Orientation::Reverse => seq.extend(self.nodes[x].iter().rev().copied()),
            }
        }
        let start = seq.iter().position(|&v| v == 1).expect("vertex 1 present");
        seq.rotate_left(start);
        NCycle::from_sequence(&seq)
    }

    /// Expands a contracted circuit and verifies it against the input graph.
    ///
    /// `orientation[x]` gives node `x`'s traversal direction (index 0 unused;
    /// missing entries default to forward).
    pub fn expand_circuit(&self, circuit: &NCycle, orientation: &[Orientation]) -> Result<NCycle> {
        let full = self.expand_unchecked(circuit, orientation)?;
        self.base.verify_circuit(&full)?;
        Ok(full)
    }

    /// Checks the structural invariants: interior path vertices have degree 2
    /// in the working graph, and every path edge exists.
    pub fn check_invariants(&self) -> Result<()> {
        for x in 1..=self.m() {
            let p = &self.nodes[x];
            for w in p.windows(2) {
                if !self.work.has_arc(w[0], w[1]) {
                    return Err(Error::Internal(format!("path edge ({}, {}) missing", w[0], w[1])));
                }
            }
            for &v in p.iter().skip(1).take(p.len().saturating_sub(2)) {
                let deg = match &self.work {
                    BaseGraph::Undirected(g) => g.degree(v),
                    BaseGraph::Directed(d) => d.out_degree(v) + d.in_degree(v),
                };
                if deg != 2 {
                    return Err(Error::Internal(format!("interior vertex {v} has degree {deg}")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ContractedGraph {
    /// Adjacency listing in the style `x: y, z` per node and orientation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 1..=self.m() {
            let orientations: &[Orientation] = if self.is_rvertex(x) && !self.is_directed() {
                &[Orientation::Forward, Orientation::Reverse]
            } else {
                &[Orientation::Forward]
            };
            for &o in orientations {
                let heads: Vec<String> = self.out_arcs(x, o).map(|(y, oy)| self.label(y, oy)).collect();
                writeln!(f, "{}: {}", self.label(x, o), heads.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Splits an undirected forced-edge structure (max degree 2) into paths and cycles.
fn forced_components<F>(n: usize, forced_nbrs: F) -> (Vec<Vec<Vertex>>, Vec<Vec<Vertex>>)
where
    F: Fn(Vertex) -> Vec<Vertex>,
{
    let nbrs: Vec<Vec<Vertex>> = (0..=n).map(|v| if v == 0 { Vec::new() } else { forced_nbrs(v) }).collect();
    let mut seen = vec![false; n + 1];
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    let walk = |start: Vertex, seen: &mut Vec<bool>| {
        let mut p = vec![start];
        seen[start] = true;
        let mut prev = 0;
        let mut cur = start;
        loop {
            let next = nbrs[cur].iter().copied().find(|&u| u != prev && !seen[u]);
            match next {
                Some(u) => {
                    seen[u] = true;
                    p.push(u);
                    prev = cur;
                    cur = u;
                }
                None => break,
            }
        }
        p
    };
    for v in 1..=n {
        if !seen[v] && nbrs[v].len() == 1 {
            paths.push(walk(v, &mut seen));
        }
    }
    for v in 1..=n {
        if !seen[v] && nbrs[v].len() == 2 {
            cycles.push(walk(v, &mut seen));
        }
    }
    (paths, cycles)
}
