//! Success rates of Algorithm G on Boll graphs and Algorithm D on
//! 2-in-2-out digraphs.
//!
//! `cargo run --release --example success_rates -- [instances] [sizes...]`

use std::time::Instant;

use hamperm::graph::BaseGraph;
use hamperm::random::{boll_graph, k_in_k_out};
use hamperm::search::{algorithm_d, algorithm_g, SearchConfig};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let count = args.first().copied().unwrap_or(100);
    let sizes: Vec<usize> = if args.len() > 1 { args[1..].to_vec() } else { vec![50, 100, 200] };
    for &n in &sizes {
        let t = Instant::now();
        let (mut ok, mut rejected) = (0, 0);
        for seed in 0..count as u64 {
            let g = boll_graph(n, seed).expect("generator");
            let Ok(r) = algorithm_g(&g, &SearchConfig::seeded(seed)) else {
                rejected += 1;
                continue;
            };
            if let Some(c) = r.circuit() {
                BaseGraph::from(g).verify_circuit(c).expect("verified circuit");
                ok += 1;
            }
        }
        println!("G  n={n:4}: {ok}/{count} ({rejected} rejected as non-hamiltonian) in {:?}", t.elapsed());
        let t = Instant::now();
        let (mut ok, mut rejected) = (0, 0);
        for seed in 0..count as u64 {
            let d = k_in_k_out(n, 2, seed).expect("generator");
            let Ok(r) = algorithm_d(&d, &SearchConfig::seeded(seed)) else {
                rejected += 1;
                continue;
            };
            if let Some(c) = r.circuit() {
                BaseGraph::from(d).verify_circuit(c).expect("verified circuit");
                ok += 1;
            }
        }
        println!("D  n={n:4}: {ok}/{count} ({rejected} rejected as non-hamiltonian) in {:?}", t.elapsed());
    }
}
