//! Search algorithms over pseudo-hamilton circuits.
//!
//! - [`algorithm_g`]: graphs, after contraction, with rotations.
//! - [`algorithm_g_no_r`]: the same search on the uncontracted graph, with
//!   the forced rotation at degree-2 pseudo-arc vertices.
//! - [`algorithm_g_heuristic`]: on all-zero scores, rotates instead of
//!   taking a neutral move, preferring positive-score rotations.
//! - [`algorithm_d`]: digraphs; no rotations, failure backtracks.
//! - [`reachability_oracle`]: breadth-first search over admissible moves on
//!   small instances.
//! - [`tsp_heuristic`]: good rotations and 3-cycles for the symmetric TSP.

mod engine;
mod oracle;
mod tsp;

use std::sync::atomic::AtomicBool;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{BaseGraph, ContractedGraph, Contraction, Digraph, Graph};
use crate::perm::NCycle;
use crate::state::InitInfo;

pub use engine::{run_on, run_on_cancellable};
pub use oracle::{reachability_oracle, OracleConfig, OracleOutcome};
pub use tsp::{tsp_heuristic, TspConfig, TspResult};

/// Which search variant to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    /// Algorithm G.
    G,
    /// Algorithm G without r-vertices.
    GNoR,
    /// Algorithm G with rotation-first handling of all-zero iterations.
    GHeur,
    /// Algorithm D.
    D,
}

impl std::str::FromStr for Algo {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(Algo::G),
            "g-nor" => Ok(Algo::GNoR),
            "g-heur" => Ok(Algo::GHeur),
            "d" => Ok(Algo::D),
            _ => Err(crate::Error::InvalidInput(format!("unknown algorithm {s:?} (expected g, d, g-nor or g-heur)"))),
        }
    }
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algo::G => "g",
            Algo::GNoR => "g-nor",
            Algo::GHeur => "g-heur",
            Algo::D => "d",
        })
    }
}

/// Search parameters; `None` budgets are derived from the contracted size `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Seed for every random choice.
    pub seed: u64,
    /// Iterations per phase; default `⌈2·m·ln m⌉`.
    pub max_iterations: Option<usize>,
    /// Number of phases (default 2).
    pub phases: usize,
    /// Arcs probed per vertex; default `⌈ln m⌉ + 1`.
    pub arcs_per_vertex: Option<usize>,
    /// POTDTC pairs probed per iteration; default `⌈(ln m)²⌉`.
    pub depth_budget: Option<usize>,
    /// Start from a circuit avoiding the graph when possible.
    pub forced_complement_h0: bool,
    /// On all-zero iterations apply the neutral move even if a positive rotation exists.
    pub prefer_zero_move_over_rotation: bool,
    /// Rebuild interval; default `⌈√m⌉`.
    pub rebuild_interval: Option<usize>,
    /// Record one trace line per iteration.
    pub record_trace: bool,
    /// Verify all state invariants after every iteration (slow; for tests).
    pub check_integrity: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_iterations: None,
            phases: 2,
            arcs_per_vertex: None,
            depth_budget: None,
            forced_complement_h0: false,
            prefer_zero_move_over_rotation: false,
            rebuild_interval: None,
            record_trace: false,
            check_integrity: false,
        }
    }
}

impl SearchConfig {
    /// Default configuration with the given seed.
    pub fn seeded(seed: u64) -> Self {
        SearchConfig { seed, ..Self::default() }
    }

    /// Iterations per phase for `m` contracted vertices.
    pub fn phase_budget(&self, m: usize) -> usize {
        self.max_iterations.unwrap_or_else(|| (2.0 * m as f64 * ln(m)).ceil() as usize).max(1)
    }

    /// Arcs probed per vertex for `m` contracted vertices.
    pub fn arcs_budget(&self, m: usize) -> usize {
        self.arcs_per_vertex.unwrap_or_else(|| ln(m).ceil() as usize + 1).max(1)
    }

    /// POTDTC pairs probed per iteration for `m` contracted vertices.
    pub fn pair_budget(&self, m: usize) -> usize {
        self.depth_budget.unwrap_or_else(|| (ln(m) * ln(m)).ceil() as usize).max(1)
    }
}

fn ln(m: usize) -> f64 {
    (m.max(2) as f64).ln()
}

/// Counters collected during a search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Contracted vertex count.
    pub m: usize,
    /// Iterations that reduced `|PSEUDO|`.
    pub successes: usize,
    /// Iterations that found nothing to apply, or backtracked.
    pub failures: usize,
    /// Neutral moves applied.
    pub zero_moves: usize,
    /// Rotations applied.
    pub rotations: usize,
    /// BACKTRACK pops.
    pub backtracks: usize,
    /// Fresh initial circuits after an empty BACKTRACK.
    pub reseeds: usize,
    /// Iterations spent in the first phase.
    pub phase1_iterations: usize,
    /// `|PSEUDO|` at the end.
    pub final_pseudo: usize,
    /// Whether the initial circuit fell back from the forced-complement mode.
    pub h0_fell_back: bool,
}

/// Final outcome of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A hamilton circuit over the base vertices, verified against the input.
    Circuit(NCycle),
    /// The budget ran out.
    Exhausted,
    /// Stopped early through the cancellation flag.
    Cancelled,
}

/// Result of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Circuit or exhaustion.
    pub outcome: Outcome,
    /// Iterations performed.
    pub iterations: usize,
    /// Successes minus failures.
    pub net_successes: i64,
    /// Detailed counters.
    pub stats: SearchStats,
    /// One line per iteration when requested.
    pub trace: Vec<String>,
}

impl SearchResult {
    /// The circuit, if found.
    pub fn circuit(&self) -> Option<&NCycle> {
        match &self.outcome {
            Outcome::Circuit(c) => Some(c),
            Outcome::Exhausted | Outcome::Cancelled => None,
        }
    }

    fn trivial(c: NCycle) -> Self {
        SearchResult { outcome: Outcome::Circuit(c), iterations: 0, net_successes: 0, stats: SearchStats::default(), trace: Vec::new() }
    }
}

fn run_contraction(c: Contraction, cfg: &SearchConfig, algo: Algo) -> Result<SearchResult> {
    match c {
        Contraction::TriviallyHamiltonian(h) => Ok(SearchResult::trivial(h)),
        Contraction::Contracted(cg) => run_on(&cg, cfg, algo),
    }
}

/// Algorithm G on a graph.
pub fn algorithm_g(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    run_contraction(ContractedGraph::contract(g)?, cfg, Algo::G)
}

/// Algorithm G on the uncontracted graph.
pub fn algorithm_g_no_r(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    if g.n() >= 3 && g.min_degree() < 2 {
        return Err(crate::Error::NotHamiltonian(format!("minimum degree {} < 2", g.min_degree())));
    }
    run_on(&ContractedGraph::identity(g.clone().into()), cfg, Algo::GNoR)
}

/// Algorithm G with rotation-first handling of all-zero iterations.
pub fn algorithm_g_heuristic(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    run_contraction(ContractedGraph::contract(g)?, cfg, Algo::GHeur)
}

/// Algorithm D on a digraph.
pub fn algorithm_d(d: &Digraph, cfg: &SearchConfig) -> Result<SearchResult> {
    run_contraction(ContractedGraph::contract_digraph(d)?, cfg, Algo::D)
}

/// Runs `algo` on a graph or digraph: contraction first, except for
/// [`Algo::GNoR`], which searches the uncontracted graph.
pub fn run_algo(g: &BaseGraph, cfg: &SearchConfig, algo: Algo, cancel: &AtomicBool) -> Result<SearchResult> {
    let contraction = match (algo, g) {
        (Algo::D, BaseGraph::Directed(d)) => ContractedGraph::contract_digraph(d)?,
        (Algo::GNoR, BaseGraph::Undirected(u)) => {
            if u.n() >= 3 && u.min_degree() < 2 {
                return Err(crate::Error::NotHamiltonian(format!("minimum degree {} < 2", u.min_degree())));
            }
            Contraction::Contracted(ContractedGraph::identity(g.clone()))
        }
        (Algo::G | Algo::GHeur, BaseGraph::Undirected(u)) => ContractedGraph::contract(u)?,
        (Algo::D, _) => return Err(crate::Error::InvalidInput("algorithm d needs a digraph".into())),
        (_, _) => return Err(crate::Error::InvalidInput(format!("algorithm {algo} needs an undirected graph"))),
    };
    match contraction {
        Contraction::TriviallyHamiltonian(h) => Ok(SearchResult::trivial(h)),
        Contraction::Contracted(cg) => run_on_cancellable(&cg, cfg, algo, cancel),
    }
}

/// Records the initial-circuit information into the statistics.
fn note_init(stats: &mut SearchStats, info: InitInfo) {
    stats.h0_fell_back = info.fell_back;
}
