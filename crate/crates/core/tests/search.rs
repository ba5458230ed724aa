//! Hamilton-circuit search, the reachability oracle and the TSP heuristic.

mod common;

use std::sync::atomic::AtomicBool;

use common::{hamilton_cycles, is_hamilton_circuit, min_tour};
use hamperm::ap::CostMatrix;
use hamperm::graph::{BaseGraph, Digraph, Graph};
use hamperm::random::{boll_graph, k_in_k_out, random_ncycle, rng};
use hamperm::search::{
    algorithm_d, algorithm_g, algorithm_g_heuristic, algorithm_g_no_r, reachability_oracle, run_algo, tsp_heuristic,
    Algo, OracleConfig, OracleOutcome, Outcome, SearchConfig, TspConfig,
};
use hamperm::state::HamState;
use hamperm::NCycle;
use rand::Rng;

fn complete_bipartite(p: usize, q: usize) -> Graph {
    let mut g = Graph::new(p + q);
    for u in 1..=p {
        for v in p + 1..=p + q {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// A graph with a planted random hamilton circuit plus random extra edges.
fn planted(n: usize, extra: f64, seed: u64) -> Graph {
    let mut r = rng(seed, 77);
    let h = random_ncycle(n, &mut r);
    let mut g = Graph::new(n);
    for (u, v) in h.arcs() {
        g.add_edge(u, v).unwrap();
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if r.gen_bool(extra) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[test]
fn complete_graph_is_solved_within_n_iterations() {
    for n in 3..=12 {
        let res = algorithm_g(&Graph::complete(n), &SearchConfig::seeded(1)).unwrap();
        let c = res.circuit().expect("circuit");
        assert!(is_hamilton_circuit(&Graph::complete(n), c));
        assert!(res.iterations <= n);
    }
}

#[test]
fn complete_digraph_is_solved_within_n_iterations() {
    for n in 3..=10 {
        let d = Digraph::complete(n);
        let res = algorithm_d(&d, &SearchConfig::seeded(2)).unwrap();
        let c = res.circuit().expect("circuit");
        BaseGraph::from(d).verify_circuit(c).unwrap();
        assert!(res.iterations <= n);
    }
}

#[test]
fn directed_cycle_converges_to_itself() {
    let n = 9;
    let arcs: Vec<(usize, usize)> = (1..=n).map(|v| (v, v % n + 1)).collect();
    let d = Digraph::from_arcs(n, &arcs).unwrap();
    let res = algorithm_d(&d, &SearchConfig::seeded(3)).unwrap();
    assert_eq!(res.circuit().unwrap(), &NCycle::natural(n));
}

#[test]
fn random_hamiltonian_graphs_are_solved_and_verified() {
    for seed in 0..20 {
        let g = planted(8, 0.3, seed);
        for algo in [Algo::G, Algo::GNoR, Algo::GHeur] {
            let res = run_algo(&g.clone().into(), &SearchConfig::seeded(seed), algo, &AtomicBool::new(false)).unwrap();
            let c = res.circuit().unwrap_or_else(|| panic!("{algo} failed on seed {seed}"));
            assert!(is_hamilton_circuit(&g, c));
        }
    }
}

#[test]
fn variants_agree_on_larger_random_graphs() {
    let g = boll_graph(60, 11).unwrap();
    let cfg = SearchConfig { check_integrity: true, ..SearchConfig::seeded(4) };
    for res in [algorithm_g(&g, &cfg), algorithm_g_no_r(&g, &cfg), algorithm_g_heuristic(&g, &cfg)] {
        if let Some(c) = res.unwrap().circuit() {
            assert!(is_hamilton_circuit(&g, c));
        }
    }
    let d = k_in_k_out(60, 2, 11).unwrap();
    let res = algorithm_d(&d, &cfg).unwrap();
    let c = res.circuit().expect("2-in-2-out digraph of 60 vertices");
    BaseGraph::from(d).verify_circuit(c).unwrap();
}

#[test]
fn searches_are_deterministic_per_seed() {
    let g = boll_graph(50, 8).unwrap();
    let cfg = SearchConfig { record_trace: true, ..SearchConfig::seeded(9) };
    assert_eq!(algorithm_g(&g, &cfg).unwrap(), algorithm_g(&g, &cfg).unwrap());
}

#[test]
fn non_hamiltonian_graph_exhausts() {
    let g = complete_bipartite(3, 4);
    let cfg = SearchConfig { max_iterations: Some(200), ..SearchConfig::seeded(1) };
    let res = algorithm_g_no_r(&g, &cfg).unwrap();
    assert_eq!(res.outcome, Outcome::Exhausted);
}

#[test]
fn cancellation_stops_the_search() {
    let g = complete_bipartite(4, 5);
    let res = run_algo(&g.into(), &SearchConfig::seeded(1), Algo::GNoR, &AtomicBool::new(true)).unwrap();
    assert_eq!(res.outcome, Outcome::Cancelled);
}

#[test]
fn wrong_graph_kind_is_rejected() {
    let cancel = AtomicBool::new(false);
    assert!(run_algo(&Graph::complete(4).into(), &SearchConfig::default(), Algo::D, &cancel).is_err());
    assert!(run_algo(&Digraph::complete(4).into(), &SearchConfig::default(), Algo::G, &cancel).is_err());
}

#[test]
fn trace_lines_follow_the_documented_format() {
    let g = boll_graph(30, 2).unwrap();
    let cfg = SearchConfig { record_trace: true, ..SearchConfig::seeded(5) };
    let res = algorithm_g_no_r(&g, &cfg).unwrap();
    assert!(!res.trace.is_empty());
    for line in &res.trace {
        assert!(line.starts_with("iter="), "{line}");
        assert!(line.contains(" score=") && line.contains(" pseudo="), "{line}");
    }
}

#[test]
fn oracle_returns_an_empty_certificate_on_a_hamilton_start() {
    let n = 7;
    let edges: Vec<(usize, usize)> = (1..=n).map(|v| (v, v % n + 1)).collect();
    let g = Graph::from_edges(n, &edges).unwrap();
    let out = reachability_oracle(&g, &NCycle::natural(n), &OracleConfig::default()).unwrap();
    assert_eq!(out, OracleOutcome::Certificate(Vec::new()));
}

#[test]
fn oracle_certificates_replay_to_hamilton_circuits() {
    for seed in 0..10 {
        let g = planted(7, 0.25, seed);
        let h0 = random_ncycle(7, &mut rng(seed, 5));
        match reachability_oracle(&g, &h0, &OracleConfig::default()).unwrap() {
            OracleOutcome::Certificate(moves) => {
                let mut h = h0.clone();
                for m in moves {
                    assert!(m.is_admissible(&h));
                    h = NCycle::from_permutation(&hamperm::perm::compose(&h, &m.to_permutation(7).unwrap()).unwrap()).unwrap();
                }
                assert!(is_hamilton_circuit(&g, &h));
            }
            other => panic!("seed {seed}: {other:?}"),
        }
    }
}

#[test]
fn oracle_exhausts_on_a_non_hamiltonian_graph() {
    let g = complete_bipartite(2, 4);
    assert!(hamilton_cycles(&g).is_empty());
    let out = reachability_oracle(&g, &NCycle::natural(6), &OracleConfig::default()).unwrap();
    assert!(matches!(out, OracleOutcome::Exhausted { .. }));
}

#[test]
fn tsp_with_equal_weights_returns_n_times_the_weight() {
    let w = CostMatrix::from_fn(9, |_, _| 4.0).unwrap();
    let res = tsp_heuristic(&w, &TspConfig::default()).unwrap();
    assert_eq!(res.weight, 36.0);
    assert_eq!(res.tour.n(), 9);
}

#[test]
fn tsp_history_is_monotone_and_never_below_the_optimum() {
    for seed in 0..15 {
        let mut r = rng(seed, 3);
        let w = CostMatrix::random_metric(8, 100, &mut r).unwrap();
        let res = tsp_heuristic(&w, &TspConfig { seed, ..TspConfig::default() }).unwrap();
        assert!(res.history.windows(2).all(|p| p[1] <= p[0]));
        assert_eq!(*res.history.last().unwrap(), res.weight);
        let rows: Vec<Vec<f64>> = (1..=8).map(|i| (1..=8).map(|j| if i == j { 0.0 } else { w.get(i, j) }).collect()).collect();
        let opt = min_tour(&rows);
        assert!(res.weight >= opt - 1e-9);
        let t = &res.tour;
        let recomputed: f64 = t.arcs().iter().map(|&(u, v)| w.get(u, v)).sum();
        assert!((recomputed - res.weight).abs() < 1e-9);
    }
}

#[test]
fn initial_state_is_seeded() {
    let g = boll_graph(40, 3).unwrap();
    let cg = hamperm::graph::ContractedGraph::identity(g.into());
    let cfg = hamperm::state::StateConfig::for_size(40, None);
    let (a, _) = HamState::init(&cg, 12, false, cfg).unwrap();
    let (b, _) = HamState::init(&cg, 12, false, cfg).unwrap();
    assert_eq!(a.circuit(), b.circuit());
}
