//! Exhaustive breadth-first search over admissible moves on small graphs.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{CircularOrder, MoveKind, NCycle, Vertex};

/// Limits of the breadth-first search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest accepted vertex count.
    pub max_n: usize,
    /// Maximum number of circuits visited.
    pub max_states: usize,
    /// Only use moves at least one of whose witness arcs lies in the graph.
    pub arc_guided: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 10, max_states: 2_000_000, arc_guided: true }
    }
}

/// Result of the reachability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Moves leading from `h0` to a hamilton circuit, applied in order.
    Certificate(Vec<MoveKind>),
    /// No hamilton circuit reachable within the budget.
    Exhausted {
        /// Circuits visited.
        states: usize,
    },
}

/// All 3-cycles and POTDTCs on `1..=n`, each permutation once.
fn all_moves(n: usize) -> Vec<MoveKind> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push(MoveKind::ThreeCycle { a, b, c });
                out.push(MoveKind::ThreeCycle { a, b: c, c: b });
                for d in c + 1..=n {
                    out.push(MoveKind::Potdtc { a, c: b, b: c, d });
                    out.push(MoveKind::Potdtc { a, c, b, d });
                    out.push(MoveKind::Potdtc { a, c: d, b, d: c });
                }
            }
        }
    }
    out
}

fn is_hamilton(g: &Graph, h: &NCycle) -> bool {
    (1..=h.n()).all(|v| g.has_edge(v, h.succ(v)))
}

/// Breadth-first search from `h0` over circuits reachable by admissible
/// 3-cycles and POTDTCs; returns a shortest certificate to a hamilton circuit.
pub fn reachability_oracle(g: &Graph, h0: &NCycle, cfg: &OracleConfig) -> Result<OracleOutcome> {
    let n = g.n();
    if h0.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: h0.n() });
    }
    if n > cfg.max_n {
        return Err(Error::InvalidInput(format!("reachability oracle is limited to n ≤ {}, got {n}", cfg.max_n)));
    }
    let moves = all_moves(n);
    let key = |h: &NCycle| -> Vec<Vertex> { h.sequence() };
    let mut parent: HashMap<Vec<Vertex>, Option<(Vec<Vertex>, MoveKind)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(key(h0), None);
    queue.push_back(h0.clone());
    while let Some(h) = queue.pop_front() {
        if is_hamilton(g, &h) {
            let mut path = Vec::new();
            let mut k = key(&h);
            while let Some(Some((prev, mv))) = parent.get(&k) {
                path.push(*mv);
                k = prev.clone();
            }
            path.reverse();
            return Ok(OracleOutcome::Certificate(path));
        }
        if parent.len() >= cfg.max_states {
            break;
        }
        for &mv in &moves {
            if !mv.is_admissible(&h) {
                continue;
            }
            if cfg.arc_guided && !mv.vertices().iter().any(|&v| g.has_edge(v, h.successor(mv.image(v)))) {
                continue;
            }
            let seq: Vec<Vertex> = {
                let mut s = Vec::with_capacity(n);
                let mut v = 1;
                for _ in 0..n {
                    s.push(v);
                    v = h.succ(mv.image(v));
                }
                s
            };
            if parent.contains_key(&seq) {
                continue;
            }
            let next = NCycle::from_sequence(&seq)?;
            parent.insert(seq, Some((key(&h), mv)));
            queue.push_back(next);
        }
    }
    Ok(OracleOutcome::Exhausted { states: parent.len() })
}
