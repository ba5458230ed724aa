//! Graphs and digraphs on `1..=n`, degree queries, degree-2 contraction into
//! r-vertices, expansion of contracted circuits, and a plain-text file format.

mod contract;
mod io;

pub use contract::{ContractedGraph, Contraction, Orientation};
pub use io::{format_graph, parse_graph};

use crate::error::{Error, Result};
use crate::perm::{check_vertex, NCycle, Vertex};

/// A simple undirected graph; every edge is stored as a pair of symmetric arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl Graph {
    /// The empty graph on `1..=n`.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n + 1], edges: 0 }
    }

    /// Builds a graph from an edge list; duplicate edges are merged, loops rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The complete graph `Kₙ`.
    pub fn complete(n: usize) -> Self {
        let adj = (0..=n).map(|v| if v == 0 { Vec::new() } else { (1..=n).filter(|&w| w != v).collect() }).collect();
        Graph { adj, edges: n * n.saturating_sub(1) / 2 }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len() - 1
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Adds `[u, v]`; returns false if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        check_vertex(u, self.n())?;
        check_vertex(v, self.n())?;
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.edges += 1;
                Ok(true)
            }
        }
    }

    /// Removes `[u, v]`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
                self.adj[v].remove(j);
                self.edges -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// True iff `[u, v]` is an edge.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Degree `d(v)`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Minimum degree `δ(G)`; 0 for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (1..=self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n()).flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect()
    }

    /// The complement `Kₙ − G`.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("valid vertices");
                }
            }
        }
        g
    }
}

/// A simple digraph with out- and in-adjacency lists (ROWS and COLUMNS).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    arcs: usize,
}

impl Digraph {
    /// The empty digraph on `1..=n`.
    pub fn new(n: usize) -> Self {
        Digraph { out: vec![Vec::new(); n + 1], inn: vec![Vec::new(); n + 1], arcs: 0 }
    }

    /// Builds a digraph from an arc list; duplicates merged, loops rejected.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut d = Digraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// The complete digraph on `1..=n`.
    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::new(n);
        for u in 1..=n {
            for v in 1..=n {
                if u != v {
                    d.add_arc(u, v).expect("valid arc");
                }
            }
        }
        d
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.out.len() - 1
    }

    /// Number of arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    /// Adds `(u, v)`; returns false if it was already present.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        check_vertex(u, self.n())?;
        check_vertex(v, self.n())?;
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        match self.out[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.out[u].insert(i, v);
                let j = self.inn[v].binary_search(&u).unwrap_err();
                self.inn[v].insert(j, u);
                self.arcs += 1;
                Ok(true)
            }
        }
    }

    /// Removes `(u, v)`; returns false if it was absent.
    pub fn remove_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.out[u].binary_search(&v) {
            Ok(i) => {
                self.out[u].remove(i);
                let j = self.inn[v].binary_search(&u).expect("in/out lists consistent");
                self.inn[v].remove(j);
                self.arcs -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// True iff `(u, v)` is an arc.
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.out.len() && self.out[u].binary_search(&v).is_ok()
    }

    /// Sorted out-neighbours of `v`.
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    /// Sorted in-neighbours of `v`.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    /// Out-degree `d⁺(v)`.
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    /// In-degree `d⁻(v)`.
    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n()).flat_map(|u| self.out[u].iter().map(move |&v| (u, v))).collect()
    }
}

/// Either kind of base graph; searches treat an undirected edge as two arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseGraph {
    /// An undirected graph.
    Undirected(Graph),
    /// A digraph.
    Directed(Digraph),
}

impl BaseGraph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        match self {
            BaseGraph::Undirected(g) => g.n(),
            BaseGraph::Directed(d) => d.n(),
        }
    }

    /// True for digraphs.
    pub fn is_directed(&self) -> bool {
        matches!(self, BaseGraph::Directed(_))
    }

    /// True iff `(u, v)` is an arc (for graphs: `[u, v]` is an edge).
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        match self {
            BaseGraph::Undirected(g) => g.has_edge(u, v),
            BaseGraph::Directed(d) => d.has_arc(u, v),
        }
    }

    /// Vertices `w` with `(v, w)` an arc.
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        match self {
            BaseGraph::Undirected(g) => g.neighbors(v),
            BaseGraph::Directed(d) => d.out_neighbors(v),
        }
    }

    /// Vertices `w` with `(w, v)` an arc.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        match self {
            BaseGraph::Undirected(g) => g.neighbors(v),
            BaseGraph::Directed(d) => d.in_neighbors(v),
        }
    }

    /// Checks that `circuit` is a hamilton circuit (cycle) of the graph,
    /// naming the first missing edge or arc otherwise.
    pub fn verify_circuit(&self, circuit: &NCycle) -> Result<()> {
        if circuit.n() != self.n() {
            return Err(Error::Verification(format!(
                "circuit has {} vertices, graph has {}",
                circuit.n(),
                self.n()
            )));
        }
        for (u, v) in circuit.arcs() {
            if !self.has_arc(u, v) {
                let what = if self.is_directed() { format!("arc ({u}, {v})") } else { format!("edge [{u}, {v}]") };
                return Err(Error::Verification(format!("missing {what}")));
            }
        }
        Ok(())
    }
}

impl From<Graph> for BaseGraph {
    fn from(g: Graph) -> Self {
        BaseGraph::Undirected(g)
    }
}

impl From<Digraph> for BaseGraph {
    fn from(d: Digraph) -> Self {
        BaseGraph::Directed(d)
    }
}
