//! Hamilton circuits, assignment problems and TSP approximation through
//! H-admissible permutations.
//!
//! A pseudo-hamilton circuit is an n-cycle `H` over the vertex set whose arcs
//! need not lie in the graph.  An *H-admissible* permutation `s` is one for
//! which `H·s` is again an n-cycle; the search algorithms repeatedly apply
//! admissible 3-cycles and products of two disjoint transpositions (POTDTCs)
//! that replace pseudo-arcs by graph arcs.
//!
//! Modules:
//! - [`perm`]: permutation algebra and the chord-intersection criteria.
//! - [`graph`]: graphs, digraphs, degree-2 contraction and circuit expansion.
//! - [`random`]: seeded random graph and digraph ensembles.
//! - [`state`]: the mutable search state (ORD tables, abbreviations, PSEUDO, BACKTRACK).
//! - [`search`]: Algorithms G and D and their variants, a reachability oracle and a TSP heuristic.
//! - [`prob`]: exact probability formulas and Monte-Carlo estimators.
//! - [`ap`]: the assignment-problem / negative-cycle pipeline and TSP approximation.
//! - [`cli`]: the command-line front end.

pub mod ap;
pub mod cli;
pub mod error;
pub mod graph;
pub mod perm;
pub mod prob;
pub mod random;
pub mod search;
pub mod state;

pub use error::{Error, Result};
pub use perm::{MoveKind, MoveSet, NCycle, Permutation, Vertex};
