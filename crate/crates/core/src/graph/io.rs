//! Plain-text graph files.
//!
//! ```text
//! # comment lines start with '#'
//! graph 5            (or: digraph 5)
//! 1: 2, 3, 5         adjacency line: edges [1,2], [1,3], [1,5] (arcs for a digraph)
//! 4 5                edge / arc line
//! ```

use super::{BaseGraph, Digraph, Graph};
use crate::error::{Error, Result};
use crate::perm::Vertex;

/// Parses the graph file format.
pub fn parse_graph(text: &str) -> Result<BaseGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse { line: hline, message: format!("bad header {header:?}") })?;
    let mut g = match kind {
        "graph" => BaseGraph::Undirected(Graph::new(n)),
        "digraph" => BaseGraph::Directed(Digraph::new(n)),
        _ => return Err(Error::Parse { line: hline, message: format!("header must be 'graph n' or 'digraph n', got {header:?}") }),
    };
    for (line, l) in lines {
        let parse_v = |t: &str| -> Result<Vertex> {
            t.trim().parse().map_err(|_| Error::Parse { line, message: format!("bad vertex {t:?}") })
        };
        let pairs: Vec<(Vertex, Vertex)> = if let Some((head, tail)) = l.split_once(':') {
            let u = parse_v(head)?;
            tail.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| Ok((u, parse_v(t)?))).collect::<Result<_>>()?
        } else {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 2 {
                return Err(Error::Parse { line, message: format!("expected 'u v' or 'v: a, b', got {l:?}") });
            }
            vec![(parse_v(t[0])?, parse_v(t[1])?)]
        };
        for (u, v) in pairs {
            let added = match &mut g {
                BaseGraph::Undirected(g) => g.add_edge(u, v),
                BaseGraph::Directed(d) => d.add_arc(u, v),
            };
            added.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        }
    }
    Ok(g)
}

/// Formats a graph as a header plus one adjacency line per vertex.
pub fn format_graph(g: &BaseGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "digraph" } else { "graph" };
    out.push_str(&format!("{kind} {}\n", g.n()));
    for v in 1..=g.n() {
        let nb: Vec<String> = g.out_neighbors(v).iter().map(|w| w.to_string()).collect();
        out.push_str(&format!("{v}: {}\n", nb.join(", ")));
    }
    out
}
