//! The `hamperm` command-line front end.
//!
//! Every subcommand prints a run record: human-readable `key: value` lines
//! by default, or one JSON object with `--json`.  All randomness derives from
//! `--seed`, so identical inputs and flags give identical records.
//!
//! Exit codes: 0 success, 1 algorithmic exhaustion or a failed check, 2 bad
//! input, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::ap::{self, Assignment, CostMatrix, Phase1Config, Phase3Config, EPS};
use crate::error::{Error, Result};
use crate::graph::{parse_graph, BaseGraph};
use crate::perm::NCycle;
use crate::prob::{self, BoundAlgo, MoveModel, Tail};
use crate::random::{self, Ensemble, EnsembleSpec};
use crate::search::{self, Algo, OracleConfig, OracleOutcome, SearchConfig, SearchResult, TspConfig};

/// Version of the JSON record layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for exhaustion, a failed verification or a failed oracle check.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;

/// Random stream for the assignment starts and oracle circuits chosen by the CLI.
const STREAM_CLI: u64 = 30;

#[derive(Parser, Debug)]
#[command(name = "hamperm", version, about = "Hamilton circuits, assignment and TSP through H-admissible permutations")]
struct Cli {
    /// Emit one JSON record instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Include the wall time in the record (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a random graph or digraph and print it in the graph file format.
    Gen(GenArgs),
    /// Search a graph (Algorithm G variants) or digraph (Algorithm D) for a hamilton circuit.
    Ham(HamArgs),
    /// Check that a circuit is a hamilton circuit of a graph.
    Verify(VerifyArgs),
    /// Evaluate probability formulas and Monte-Carlo estimates.
    Prob(ProbArgs),
    /// Solve the assignment problem over derangements.
    Ap(MatrixArgs),
    /// Approximate the TSP through the assignment pipeline.
    TspFw(MatrixArgs),
    /// Run the rotation / 3-cycle TSP heuristic.
    TspHeur(TspHeurArgs),
    /// Breadth-first search for an admissible-move certificate on a small graph.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// boll, frieze-boll, k-in-k-out, regular-out or gnm.
    #[arg(long, default_value = "boll")]
    ensemble: String,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arcs in and out per vertex for k-in-k-out.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Out-choices per vertex for regular-out.
    #[arg(long, default_value_t = 3)]
    i: usize,
    /// Edge count for gnm.
    #[arg(long)]
    m: Option<usize>,
    /// Write the graph here instead of into the record.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HamArgs {
    /// Graph file.
    graph: PathBuf,
    /// g, g-nor, g-heur or d.
    #[arg(long, default_value = "g")]
    algo: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iterations per phase (default ⌈2 m ln m⌉).
    #[arg(long)]
    max_iters: Option<usize>,
    /// Write one line per iteration of the winning run to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Run this many seeded searches concurrently (seeds seed, seed+1, …).
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Start from a circuit avoiding the graph's edges when one exists.
    #[arg(long)]
    forced_complement: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Graph file.
    graph: PathBuf,
    /// Circuit in cycle notation, e.g. "(1 2 3 4)".
    circuit: String,
}

#[derive(Args, Debug)]
struct ProbArgs {
    #[command(subcommand)]
    what: ProbCommand,
}

#[derive(Subcommand, Debug)]
enum ProbCommand {
    /// Chord-intersection probability of a pseudo-3-cycle.
    P3 {
        #[arg(long)]
        n: usize,
    },
    /// Chord-intersection probability of a POTDTC.
    P22 {
        #[arg(long)]
        n: usize,
    },
    /// Lower bound for two admissible 3-cycles through a pseudo-arc vertex.
    TwoAdmissible {
        #[arg(long)]
        n: usize,
    },
    /// Probability that r balls occupy all n cells.
    Occupancy {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
    },
    /// Hoeffding bound on a binomial tail.
    Hoeffding {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha: f64,
        /// lower or upper.
        #[arg(long, default_value = "lower")]
        tail: String,
    },
    /// Monte-Carlo estimate of a chord-intersection rate.
    Mc {
        /// three-cycle or potdtc.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Number of trials (scientific notation accepted, e.g. 1e6).
        #[arg(long, default_value = "1e6")]
        trials: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form success bounds of Algorithms G and D.
    Bounds {
        #[arg(long)]
        n: usize,
        /// g or d.
        #[arg(long, default_value = "g")]
        algo: String,
    },
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Cost matrix CSV (`inf` allowed).
    matrix: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cross-check against exhaustive enumeration (small n only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct TspHeurArgs {
    /// Symmetric cost matrix CSV.
    matrix: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Improvement-free iterations before stopping (default ⌈n ln n⌉).
    #[arg(long)]
    window: Option<usize>,
    /// Compare with the exhaustive optimum (small n only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Graph file (undirected, n ≤ 10).
    graph: PathBuf,
    /// Initial circuit; default: a seeded random n-cycle.
    #[arg(long)]
    h0: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of circuits visited.
    #[arg(long, default_value_t = 2_000_000)]
    max_states: usize,
    /// Allow moves none of whose witness arcs lies in the graph.
    #[arg(long)]
    all_moves: bool,
}

/// The machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    /// Layout version, always [`SCHEMA_VERSION`].
    pub schema: u32,
    /// Subcommand name.
    pub subcommand: String,
    /// `sha256:` digest of the input file or of the generating parameters.
    pub input_digest: String,
    /// Seed, when the subcommand is randomized.
    pub seed: Option<u64>,
    /// Echo of the effective configuration.
    pub config: Value,
    /// Subcommand-specific result.
    pub outcome: Value,
    /// Wall time in milliseconds, only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// A finished subcommand: the record and its exit code.
struct Finished {
    record: RunRecord,
    code: i32,
    /// Human-readable message for stderr (e.g. a missing edge).
    message: Option<String>,
}

fn digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    let hex: String = h.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<(String, String)> {
    let bytes = read_input(path)?;
    let d = digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::InvalidInput(format!("{} is not UTF-8", path.display())))?;
    Ok((text, d))
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotHamiltonian(_) | Error::ContractionCycle { .. } | Error::Verification(_) | Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

fn record(subcommand: &str, input_digest: String, seed: Option<u64>, config: Value, outcome: Value) -> RunRecord {
    RunRecord { schema: SCHEMA_VERSION, subcommand: subcommand.into(), input_digest, seed, config, outcome, wall_time_ms: None }
}

fn finished(record: RunRecord, code: i32) -> Finished {
    Finished { record, code, message: None }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes the record to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{text}");
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Ham(a) => cmd_ham(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Prob(a) => cmd_prob(a),
        Command::Ap(a) => cmd_ap(a),
        Command::TspFw(a) => cmd_tsp_fw(a),
        Command::TspHeur(a) => cmd_tsp_heur(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(mut f) => {
            if cli.timing {
                f.record.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if let Some(m) = &f.message {
                let _ = writeln!(err, "{m}");
            }
            let _ = write_record(out, &f.record, cli.json);
            f.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn write_record(out: &mut dyn Write, r: &RunRecord, json: bool) -> std::io::Result<()> {
    if json {
        let text = serde_json::to_string(r).map_err(std::io::Error::other)?;
        return writeln!(out, "{text}");
    }
    writeln!(out, "subcommand: {}", r.subcommand)?;
    writeln!(out, "input: {}", r.input_digest)?;
    if let Some(s) = r.seed {
        writeln!(out, "seed: {s}")?;
    }
    if let Value::Object(map) = &r.outcome {
        for (k, v) in map {
            match v {
                Value::String(s) if s.contains('\n') => {
                    writeln!(out, "{k}:")?;
                    write!(out, "{s}")?;
                }
                Value::String(s) => writeln!(out, "{k}: {s}")?,
                other => writeln!(out, "{k}: {other}")?,
            }
        }
    }
    if let Some(t) = r.wall_time_ms {
        writeln!(out, "wall_time_ms: {t:.3}")?;
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<Finished> {
    let kind = match a.ensemble.as_str() {
        "boll" => Ensemble::Boll,
        "frieze-boll" => Ensemble::FriezeBoll,
        "k-in-k-out" => Ensemble::KInKOut(a.k),
        "regular-out" => Ensemble::RegularOut(a.i),
        "gnm" => Ensemble::ErdosRenyiM(a.m.ok_or_else(|| Error::InvalidInput("gnm needs --m".into()))?),
        other => return Err(Error::InvalidInput(format!("unknown ensemble {other:?}"))),
    };
    let spec = EnsembleSpec { kind, n: a.n, seed: a.seed };
    let g = spec.generate()?;
    let text = format!("{}\n{}", spec.provenance(), crate::graph::format_graph(&g));
    let config = json!({ "ensemble": kind.to_string(), "n": a.n });
    let mut outcome = json!({ "directed": g.is_directed(), "n": g.n() });
    if let Some(path) = &a.output {
        std::fs::write(path, &text).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        outcome["written"] = json!(path.display().to_string());
    } else {
        outcome["graph"] = json!(text);
    }
    Ok(finished(record("gen", digest(spec.provenance().as_bytes()), Some(a.seed), config, outcome), EXIT_OK))
}

/// Runs `restarts` seeded searches concurrently.  The winner is the lowest
/// restart index that finds a circuit; a run is cancelled only once a lower
/// index has succeeded, so the winner does not depend on thread timing.
fn search_with_restarts(g: &BaseGraph, base: &SearchConfig, algo: Algo, restarts: usize) -> Result<(usize, SearchResult)> {
    let restarts = restarts.max(1);
    let cancel: Vec<AtomicBool> = (0..restarts).map(|_| AtomicBool::new(false)).collect();
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<SearchResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..restarts)
            .map(|i| {
                let cfg = SearchConfig { seed: base.seed.wrapping_add(i as u64), ..base.clone() };
                let (cancel, best) = (&cancel, &best);
                scope.spawn(move || {
                    let r = search::run_algo(g, &cfg, algo, &cancel[i]);
                    if matches!(&r, Ok(res) if res.circuit().is_some()) {
                        best.fetch_min(i, Ordering::SeqCst);
                        for flag in &cancel[i + 1..] {
                            flag.store(true, Ordering::SeqCst);
                        }
                    }
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("search thread panicked".into())))).collect()
    });
    let winner = best.load(Ordering::SeqCst);
    let idx = if winner == usize::MAX { 0 } else { winner };
    let mut results = results;
    // Errors of the reported run (e.g. a non-hamiltonian contraction) propagate.
    let r = results.swap_remove(idx)?;
    Ok((idx, r))
}

fn cmd_ham(a: &HamArgs) -> Result<Finished> {
    let (text, d) = read_text(&a.graph)?;
    let g = parse_graph(&text)?;
    let algo: Algo = a.algo.parse()?;
    let cfg = SearchConfig {
        seed: a.seed,
        max_iterations: a.max_iters,
        forced_complement_h0: a.forced_complement,
        record_trace: a.trace.is_some() || log::log_enabled!(log::Level::Trace),
        ..SearchConfig::default()
    };
    let (winner, res) = search_with_restarts(&g, &cfg, algo, a.restarts)?;
    for line in &res.trace {
        log::trace!("{line}");
    }
    if let Some(path) = &a.trace {
        let mut body = res.trace.join("\n");
        body.push('\n');
        std::fs::write(path, body).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    let config = json!({ "algo": algo, "restarts": a.restarts.max(1), "search": cfg });
    let mut outcome = json!({
        "iterations": res.iterations,
        "net_successes": res.net_successes,
        "restart": winner,
        "stats": res.stats,
    });
    let code = match res.circuit() {
        Some(c) => {
            g.verify_circuit(c)?;
            outcome["outcome"] = json!("circuit");
            outcome["circuit"] = json!(c.to_string());
            EXIT_OK
        }
        None => {
            outcome["outcome"] = json!("exhausted");
            EXIT_FAILURE
        }
    };
    Ok(finished(record("ham", d, Some(a.seed), config, outcome), code))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Finished> {
    let (text, d) = read_text(&a.graph)?;
    let g = parse_graph(&text)?;
    let c = NCycle::parse(&a.circuit)?;
    let config = json!({ "circuit": c.to_string() });
    Ok(match g.verify_circuit(&c) {
        Ok(()) => finished(record("verify", d, None, config, json!({ "valid": true })), EXIT_OK),
        Err(Error::Verification(why)) => Finished {
            record: record("verify", d, None, config, json!({ "valid": false, "reason": why })),
            code: EXIT_FAILURE,
            message: Some(format!("not a hamilton circuit: {why}")),
        },
        Err(e) => return Err(e),
    })
}

fn prob_value(p: &prob::RationalProb) -> Value {
    json!({ "exact": p.to_string(), "value": p.to_f64(), "clamped": p.was_clamped(), "raw": p.raw().to_string() })
}

fn cmd_prob(a: &ProbArgs) -> Result<Finished> {
    let (name, config, outcome, seed) = match &a.what {
        ProbCommand::P3 { n } => ("p3", json!({ "n": n }), prob_value(&prob::p3_exact(*n)?), None),
        ProbCommand::P22 { n } => ("p22", json!({ "n": n }), prob_value(&prob::p22_exact(*n)?), None),
        ProbCommand::TwoAdmissible { n } => ("two-admissible", json!({ "n": n }), prob_value(&prob::p_two_admissible(*n)?), None),
        ProbCommand::Occupancy { r, n } => ("occupancy", json!({ "r": r, "n": n }), prob_value(&prob::occupancy_p0(*r, *n)?), None),
        ProbCommand::Hoeffding { a, p, alpha, tail } => {
            let t: Tail = tail.parse()?;
            let ln = prob::hoeffding_ln_tail(*a, *p, *alpha, t)?;
            ("hoeffding", json!({ "a": a, "p": p, "alpha": alpha, "tail": t }), json!({ "bound": ln.exp(), "ln_bound": ln }), None)
        }
        ProbCommand::Mc { kind, n, trials, seed } => {
            if !(trials.is_finite() && *trials >= 1.0 && trials.fract() == 0.0) {
                return Err(Error::InvalidInput(format!("trials must be a positive integer, got {trials}")));
            }
            let k: MoveModel = kind.parse()?;
            let est = prob::mc_admissible_rate(k, *n, *trials as u64, *seed)?;
            let exact = match k {
                MoveModel::ThreeCycle => prob::p3_exact(*n)?,
                MoveModel::Potdtc => prob::p22_exact(*n)?,
            };
            let z = if est.stderr > 0.0 { (est.mean - exact.to_f64()) / est.stderr } else { 0.0 };
            let outcome = json!({ "estimate": est, "exact": exact.to_string(), "z_score": z });
            ("mc", json!({ "kind": k, "n": n, "trials": *trials as u64 }), outcome, Some(*seed))
        }
        ProbCommand::Bounds { n, algo } => {
            let algo: BoundAlgo = algo.parse()?;
            let b = prob::success_probability_bounds(*n, algo)?;
            ("bounds", json!({ "n": n, "algo": algo }), serde_json::to_value(b).map_err(|e| Error::Internal(e.to_string()))?, None)
        }
    };
    let d = digest(format!("prob {name} {config}").as_bytes());
    Ok(finished(record("prob", d, seed, json!({ "quantity": name, "args": config }), outcome), EXIT_OK))
}

fn read_matrix(path: &Path) -> Result<(CostMatrix, String)> {
    let (text, d) = read_text(path)?;
    Ok((CostMatrix::parse_csv(&text)?, d))
}

fn cycles_text(p: &crate::perm::Permutation) -> String {
    p.to_string()
}

fn solve_ap(m: &CostMatrix, seed: u64) -> Result<(Assignment, ap::History, ap::Phase2Report)> {
    let mut rng = random::rng(seed, STREAM_CLI);
    let start = Assignment::random_ncycle(m, &mut rng)?;
    let (a1, history) = ap::phase1(m, &start, &Phase1Config::default())?;
    let (a2, report) = ap::phase2(m, &a1)?;
    Ok((a2, history, report))
}

fn cmd_ap(a: &MatrixArgs) -> Result<Finished> {
    let (m, d) = read_matrix(&a.matrix)?;
    let (opt, _, report) = solve_ap(&m, a.seed)?;
    let mut outcome = json!({
        "value": opt.value,
        "assignment": cycles_text(&opt.perm),
        "optimal": true,
        "sweeps": report.sweeps,
        "cycles_cancelled": report.cycles.len(),
    });
    let mut code = EXIT_OK;
    let mut message = None;
    if a.oracle {
        let (_, best) = ap::brute_force_assignment(&m)?;
        let agrees = (best - opt.value).abs() <= EPS;
        outcome["oracle_value"] = json!(best);
        outcome["oracle_agrees"] = json!(agrees);
        if !agrees {
            code = EXIT_FAILURE;
            message = Some(format!("oracle mismatch: pipeline {} vs exhaustive {best}", opt.value));
        }
    }
    let config = json!({ "oracle": a.oracle, "n": m.n() });
    Ok(Finished { record: record("ap", d, Some(a.seed), config, outcome), code, message })
}

fn cmd_tsp_fw(a: &MatrixArgs) -> Result<Finished> {
    let (m, d) = read_matrix(&a.matrix)?;
    if m.n() < 2 {
        return Err(Error::InvalidInput("a tour needs n ≥ 2".into()));
    }
    let (opt, history, report) = solve_ap(&m, a.seed)?;
    let r = ap::phase3(&m, &opt, &history, &Phase3Config { seed: a.seed, ..Phase3Config::default() })?;
    let mut outcome = json!({
        "value": r.value,
        "tour": NCycle::from_permutation(&r.tour)?.to_string(),
        "lower_bound": r.lower_bound,
        "optimal": r.optimal,
        "truncated": r.truncated,
        "gaps": r.gaps,
        "rounds": r.rounds,
        "sweeps": report.sweeps,
    });
    let mut code = EXIT_OK;
    let mut message = None;
    if a.oracle {
        let (_, best) = ap::brute_force_tour(&m)?;
        let sound = r.value >= best - EPS && (!r.optimal || (r.value - best).abs() <= EPS);
        outcome["oracle_value"] = json!(best);
        outcome["oracle_agrees"] = json!(sound);
        if !sound {
            code = EXIT_FAILURE;
            message = Some(format!("oracle mismatch: tour {} (optimal={}) vs exhaustive {best}", r.value, r.optimal));
        }
    }
    let config = json!({ "oracle": a.oracle, "n": m.n() });
    Ok(Finished { record: record("tsp-fw", d, Some(a.seed), config, outcome), code, message })
}

fn cmd_tsp_heur(a: &TspHeurArgs) -> Result<Finished> {
    let (m, d) = read_matrix(&a.matrix)?;
    let cfg = TspConfig { seed: a.seed, window: a.window, combo_width: None };
    let r = search::tsp_heuristic(&m, &cfg)?;
    let mut outcome = json!({
        "value": r.weight,
        "tour": r.tour.to_string(),
        "iterations": r.iterations,
        "history": r.history,
    });
    if a.oracle {
        let (_, best) = ap::brute_force_tour(&m)?;
        outcome["oracle_value"] = json!(best);
        outcome["oracle_agrees"] = json!(r.weight >= best - EPS);
    }
    let config = json!({ "window": a.window, "oracle": a.oracle, "n": m.n() });
    Ok(finished(record("tsp-heur", d, Some(a.seed), config, outcome), EXIT_OK))
}

fn cmd_oracle(a: &OracleArgs) -> Result<Finished> {
    let (text, d) = read_text(&a.graph)?;
    let g = match parse_graph(&text)? {
        BaseGraph::Undirected(g) => g,
        BaseGraph::Directed(_) => return Err(Error::InvalidInput("the reachability oracle needs an undirected graph".into())),
    };
    let h0 = match &a.h0 {
        Some(t) => NCycle::parse(t)?,
        None => random::random_ncycle(g.n(), &mut random::rng(a.seed, STREAM_CLI)),
    };
    let cfg = OracleConfig { max_states: a.max_states, arc_guided: !a.all_moves, ..OracleConfig::default() };
    let config = json!({ "h0": h0.to_string(), "max_states": a.max_states, "arc_guided": cfg.arc_guided });
    let (outcome, code) = match search::reachability_oracle(&g, &h0, &cfg)? {
        OracleOutcome::Certificate(moves) => {
            let mut h = h0.clone();
            for mv in &moves {
                h = NCycle::from_permutation(&crate::perm::compose(&h, &mv.to_permutation(h.n())?)?)?;
            }
            let moves: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
            (json!({ "outcome": "certificate", "moves": moves, "circuit": h.to_string() }), EXIT_OK)
        }
        OracleOutcome::Exhausted { states } => (json!({ "outcome": "exhausted", "states": states }), EXIT_FAILURE),
    };
    Ok(finished(record("oracle", d, a.h0.is_none().then_some(a.seed), config, outcome), code))
}
