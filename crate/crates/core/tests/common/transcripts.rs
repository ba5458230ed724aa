//! Scripted replays of the worked examples: the move and rotation choices
//! are fixed, and every printed intermediate circuit is checked.
//!
//! Moves and rotations are written in ordinals of the last materialized
//! circuit, as in the worked examples; `Rebuild` renumbers.  Abbreviations
//! are compared after expanding runs (`a … b` and `a --- b` both denote
//! the run of consecutive ordinals from `a` to `b`; a trailing `a …` runs
//! to `m`).  Circuits are compared label by label, starting at vertex 1.
//!
//! Some printed steps do not follow from the move printed with them.  Such
//! a step is an [`Step::Erratum`]: the stated move is tried, the mismatch is
//! confirmed, and the replay continues from the printed circuit.

use hamperm::graph::{ContractedGraph, Contraction, Graph, Orientation};
use hamperm::state::{render_ordinals, HamState, StateConfig};
use hamperm::{MoveKind, NCycle};

/// One scripted step.
#[derive(Clone, Copy, Debug)]
pub enum Step {
    /// A 3-cycle `(a b c)` or POTDTC `(a c)(b d)` in ordinals.
    Move(&'static str),
    /// A rotation by the chord `(a, x)` in ordinals.
    Rotate(usize, usize),
    /// A rotation by the chord `(a, x)` given as vertex labels.
    RotateLabels(&'static str, &'static str),
    /// Materializes the current circuit and renumbers ordinals.
    Rebuild,
    /// The printed abbreviation, compared as an expanded ordinal sequence.
    Abbrev(&'static str),
    /// The printed abbreviation, compared character for character with the renderer.
    AbbrevExact(&'static str),
    /// The printed circuit in vertex labels.
    Circuit(&'static str),
    /// The printed move does not produce the printed abbreviation; replay
    /// confirms the mismatch and continues from the printed abbreviation.
    Erratum { stated: &'static str, printed: &'static str },
}

/// Outcome of a replay.
#[derive(Debug)]
pub struct Replay<'g> {
    /// Final state.
    pub state: HamState<'g>,
    /// Indices (into the step list) of the confirmed errata.
    pub errata: Vec<usize>,
    /// Number of printed intermediate states that were checked.
    pub checks: usize,
}

/// The circle example: no graph edges are needed, only the circuit algebra.
pub const CIRCLE_H0: &str = "(1 14 8 4 3 12 7 13 10 6 11 5 15 9 2)";

/// `A₁ … A₄` on [`CIRCLE_H0`], in ordinals.
pub const CIRCLE_STEPS: &[Step] = &[
    Step::Move("(1 4 7)"),
    Step::AbbrevExact("(1 5 … 7 2 … 4 8 …)"),
    Step::Rotate(7, 9),
    Step::AbbrevExact("(1 5 … 7 9 8 4 … 2 10 …)"),
    Step::Move("(2 14 6)"),
    Step::AbbrevExact("(1 5 6 10 … 14 7 9 8 4 … 2 15)"),
    Step::Move("(5 13)(6 2)"),
    Step::AbbrevExact("(1 5 14 7 9 8 4 … 2 10 … 13 6 15)"),
];

/// The contracted 19-vertex example graph, listed per vertex.  A label
/// `x-…-y` is a path; arcs out of it leave from `y`, arcs into it enter at `x`.
pub const CONTRACTED_LISTING: &str = "\
1: 7, 20, 9-6-4
14: 18, 19, 11-12-2
2-12-11: 16, 14
16: 3, 8, 11-12-2
3: 24, 16, 17, 14, 21-15-10
17: 25, 8, 7, 22
4-6-9: 22, 1
18: 5, 14, 8, 13
5: 18, 8, 13, 16, 24
19: 14, 23, 4-6-9
20: 23, 1, 24, 13, 2-12-11
7: 1, 13, 25, 17
21-15-10: 23, 25
8: 16, 17, 5, 18
22: 17, 2-12-11, 9-6-4
9-6-4: 13, 19
23: 19, 20, 10-15-21
10-15-21: 24, 3
24: 3, 20, 5, 21-15-10
11-12-2: 22, 20
25: 17, 7, 10-15-21
13: 7, 4-6-9, 18, 20";

/// Initial circuit of the contracted example.
pub const CONTRACTED_H0: &str = "(1 2-12-11 3 4-6-9 5 7 8 10-15-21 13 14 16 17 18 19 20 22 23 24 25)";

/// Contracted example up to the circuit from which the rotation example starts.
pub const CONTRACTED_TO_H27: &[Step] = &[
    // Printed with the label of the neighbouring candidate; its witness
    // arcs (3 11), (10 13), (12 4) identify the 3-cycle (3 10 12).
    Step::Move("(3 10 12)"),
    Step::Abbrev("(1 … 3 11 12 4 … 10 13 …)"),
    Step::Move("(12 15)(18 14)"),
    Step::Abbrev("(1 … 3 11 12 16 … 18 15 4 … 10 13 14 19)"),
    Step::Move("(5 6 19)"),
    Step::Abbrev("(1 2 3 11 12 16 17 18 15 4 5 7 8 9 10 13 14 19 6)"),
    Step::Rebuild,
    Step::Circuit("(1 2-12-11 3 16 17 22 23 24 20 4-6-9 5 8 10-15-21 13 14 18 19 25 7)"),
    Step::Move("(12 3 7)"),
    Step::Abbrev("(1 … 3 8 … 12 4 … 7 13 …)"),
    Step::Move("(4 2)(16 10)"),
    Step::Abbrev("(1 2 5 6 7 13 14 15 16 11 12 4 3 8 9 10 17 18 19)"),
    Step::Move("(14 9 19)"),
    Step::Abbrev("(1 2 5 6 7 13 14 10 17 18 19 15 16 11 12 4 3 8 9)"),
    Step::Move("(1 18)(17 19)"),
    Step::Abbrev("(1 19 18 2 5 6 7 13 14 10 17 15 16 11 12 4 3 8 9)"),
    Step::Circuit("(1 7 25 2-12-11 17 22 23 10-15-21 13 4-6-9 19 14 18 5 8 16 3 24 20)"),
    Step::Move("(18 2 12)"),
    Step::Abbrev("(1 19 18 5 6 7 13 14 10 17 15 16 11 12 2 4 3 8 9)"),
    Step::Circuit("(1 7 25 17 22 23 10-15-21 13 4-6-9 19 14 18 5 8 2-12-11 16 3 24 20)"),
    Step::Rebuild,
    Step::Move("(7 17)(9 4)"),
    Step::Abbrev("(1 … 4 10 … 17 8 9 5 … 7 18 …)"),
    Step::Rotate(17, 7),
    Step::Abbrev("(1 … 4 10 … 17 7 --- 5 9 8 18 19)"),
    Step::Circuit("(1 7 25 17 19 14 18 5 8 2-12-11 16 3 21-15-10 23 22 9-6-4 13 24 20)"),
    Step::Move("(4 6)(14 3)"),
    Step::Abbrev("(1 … 3 15 … 17 7 6 10 … 14 4 5 9 8 18 19)"),
    Step::Move("(8 11 13)"),
    Step::Abbrev("(1 … 3 15 … 17 7 6 10 11 14 4 5 9 8 12 13 18 19)"),
    Step::Move("(11 8)(3 14)"),
    Step::Abbrev("(1 … 5 9 8 14 … 17 7 6 10 … 13 18 19)"),
    Step::Circuit("(1 7 25 17 22 9-6-4 13 8 2-12-11 16 3 21-15-10 23 19 14 18 5 24 20)"),
    Step::Rotate(14, 4),
    Step::Circuit("(1 20 24 5 18 14 19 23 10-15-21 3 16 11-12-2 22 9-6-4 13 8 17 25 7)"),
];

/// The last move of the contracted example.
pub const CONTRACTED_FINAL: &[Step] = &[
    Step::Move("(8 13 16)"),
    Step::Circuit("(1 20 24 5 11-12-2 22 9-6-4 13 18 14 19 23 10-15-21 3 16 8 17 25 7)"),
];

/// The rotation example, continuing from the state after [`CONTRACTED_TO_H27`].
pub const ROTATION_STEPS: &[Step] = &[
    Step::RotateLabels("13", "20"),
    Step::Circuit("(13 20 1 7 25 17 8 24 5 18 14 19 23 10-15-21 3 16 11-12-2 22 9-6-4)"),
    Step::RotateLabels("8", "18"),
    Step::Circuit("(8 18 5 24 14 19 23 10-15-21 3 16 11-12-2 22 9-6-4 13 20 1 7 25 17)"),
    Step::RotateLabels("24", "3"),
    Step::Circuit("(24 3 21-15-10 23 19 14 16 11-12-2 22 9-6-4 13 20 1 7 25 17 8 18 5)"),
    Step::RotateLabels("14", "18"),
    Step::Circuit("(14 18 8 17 25 7 1 20 13 4-6-9 22 2-12-11 16 5 24 3 21-15-10 23 19)"),
];

/// The 25-vertex graph of the uncontracted example.
pub const PLAIN_LISTING: &str = "\
1: 7, 20, 4, 9
2: 22, 20, 12
3: 24, 16, 10, 17, 14, 21
4: 13, 19, 6, 1
5: 18, 8, 13, 16, 24
6: 4, 9
7: 13, 1, 25, 17
8: 5, 17, 16, 18
9: 22, 1, 6
10: 25, 23, 15, 3
11: 16, 14, 12
12: 11, 2
13: 4, 7, 18, 5
14: 19, 18, 11, 3
15: 10, 21
16: 3, 11, 8, 5
17: 8, 25, 7, 22, 3
18: 14, 5, 8, 13
19: 23, 14, 4
20: 1, 23, 2, 24
21: 15, 3, 24
22: 2, 9, 17
23: 20, 19, 10
24: 21, 3, 20, 5
25: 17, 10, 7";

/// Final circuit of the uncontracted example.
pub const PLAIN_FINAL: &str = "(1 9 6 4 13 18 8 5 16 11 12 2 22 17 3 14 19 23 20 24 21 15 10 25 7)";

/// The uncontracted example from the natural circuit.
pub const PLAIN_STEPS: &[Step] = &[
    Step::Move("(3 13)(5 15)"),
    Step::Abbrev("(1 … 3 14 15 6 … 13 4 … 5 16 …)"),
    Step::Move("(15 9)(7 12)"),
    Step::Abbrev("(1 … 3 14 15 10 … 12 8 9 6 7 13 4 5 16 …)"),
    Step::Move("(4 17 24)"),
    Step::Abbrev("(1 … 3 14 15 10 … 12 8 9 6 7 13 4 18 … 24 5 16 17 25)"),
    Step::Move("(4 18 12)"),
    Step::Abbrev("(1 … 3 14 15 10 … 12 18 8 9 6 7 13 4 19 … 24 5 16 17 25)"),
    // The printed result is this move applied two steps earlier.
    Step::Erratum { stated: "(12 1)(24 2)", printed: "(1 8 9 6 7 13 4 5 16 … 24 3 14 15 10 … 12 2 25)" },
    Step::Move("(17 6)(4 18)"),
    Step::Abbrev("(1 8 9 6 18 5 16 17 7 13 4 19 20 21 22 23 24 3 14 15 10 11 12 2 25)"),
    Step::Move("(6 13)(16 10)"),
    Step::Circuit("(1 8 9 6 4 19 20 21 22 23 24 3 14 15 10 17 7 13 18 5 16 11 12 2 25)"),
    Step::Rebuild,
    // The printed result differs from the printed move by a 5-cycle.
    Step::Erratum { stated: "(1 2 15)", printed: "(1 3 … 8 2 16 … 24 9 … 15 25)" },
    Step::Move("(7 10 6)"),
    Step::Abbrev("(1 3 … 6 8 2 16 … 24 9 10 7 11 … 15 25)"),
    // The printed result is the listed alternative (13 21)(6 9), not the
    // alternative named in the text.
    Step::Move("(13 21)(6 9)"),
    Step::Abbrev("(1 3 4 … 6 10 7 11 … 13 22 … 24 9 8 2 16 … 21 14 15 25)"),
    Step::Move("(21 8)(9 2)"),
    Step::Abbrev("(1 3 4 … 6 10 7 11 … 13 22 … 24 9 16 … 21 2 8 14 15 25)"),
    Step::Circuit("(1 9 6 4 19 23 20 24 3 14 11 12 2 22 17 7 13 18 5 16 8 21 15 10 25)"),
    Step::Rebuild,
    Step::Move("(25 15 20)"),
    Step::Abbrev("(1 … 15 21 … 25 16 … 20)"),
    Step::Move("(21 18 9)"),
    Step::Abbrev("(1 … 9 22 … 25 16 … 18 10 … 15 21 19 20)"),
    Step::Move("(20 8 9)"),
    Step::Abbrev("(1 … 8 22 … 25 16 … 18 10 11 … 15 21 19 20 9)"),
    Step::Move("(9 18 15)"),
    Step::Abbrev("(1 … 8 22 … 25 16 … 18 21 19 20 9 … 15)"),
    Step::Move("(15 20 10)"),
    Step::Abbrev("(1 … 8 22 … 25 16 … 18 21 19 20 11 … 15 9 10)"),
    Step::Move("(10 4 16)"),
    Step::Abbrev("(1 … 4 17 18 21 19 20 11 … 15 9 10 5 … 8 22 … 25 16)"),
    Step::Circuit(PLAIN_FINAL),
];

/// Parses a `v: a, b, …` listing into an undirected graph on `1..=n`.
/// Path labels contribute their interior edges; arcs leave a path from its
/// last vertex and enter one at its first.
pub fn graph_from_listing(n: usize, listing: &str) -> Graph {
    let path = |label: &str| -> Vec<usize> { label.split('-').map(|t| t.trim().parse().expect("vertex")).collect() };
    let mut edges = Vec::new();
    for line in listing.lines() {
        let (head, tail) = line.split_once(':').expect("listing line");
        let from = path(head);
        for w in from.windows(2) {
            edges.push((w[0], w[1]));
        }
        for t in tail.split(',') {
            let to = path(t);
            edges.push((*from.last().unwrap(), to[0]));
        }
    }
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(u, v).expect("valid edge");
    }
    g
}

/// The contracted example graph.
pub fn contracted_example() -> ContractedGraph {
    let g = graph_from_listing(25, CONTRACTED_LISTING);
    match ContractedGraph::contract(&g).expect("contraction") {
        Contraction::Contracted(cg) => cg,
        other => panic!("unexpected contraction result {other:?}"),
    }
}

/// The uncontracted example graph (no contraction applied).
pub fn plain_example() -> ContractedGraph {
    ContractedGraph::identity(graph_from_listing(25, PLAIN_LISTING).into())
}

/// The circle example over an edgeless graph.
pub fn circle_example() -> ContractedGraph {
    ContractedGraph::identity(Graph::new(15).into())
}

/// Parses a circuit of labels into node ids and orientations, rotated to start at vertex 1.
pub fn parse_labels(cg: &ContractedGraph, text: &str) -> (Vec<usize>, Vec<Orientation>) {
    let mut nodes = Vec::new();
    let mut orient = vec![Orientation::Forward; cg.m() + 1];
    for tok in text.trim().trim_start_matches('(').trim_end_matches(')').split_whitespace() {
        let (x, o) = cg.node_by_label(tok).unwrap_or_else(|| panic!("unknown label {tok}"));
        nodes.push(x);
        orient[x] = o;
    }
    let one = cg.node_by_label("1").expect("vertex 1").0;
    let i = nodes.iter().position(|&x| x == one).expect("vertex 1 on circuit");
    nodes.rotate_left(i);
    (nodes, orient)
}

/// Canonical label rendering of a printed circuit (starting at vertex 1).
pub fn normalize_circuit(cg: &ContractedGraph, text: &str) -> String {
    let (nodes, orient) = parse_labels(cg, text);
    let labels: Vec<String> = nodes.iter().map(|&x| cg.label(x, orient[x])).collect();
    format!("({})", labels.join(" "))
}

/// Expands a printed abbreviation into its ordinal sequence.
pub fn expand_abbreviation(text: &str, m: usize) -> Vec<usize> {
    let toks: Vec<&str> = text.trim().trim_start_matches('(').trim_end_matches(')').split_whitespace().collect();
    let mut out: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let t = toks[i];
        if t == "…" || t == "---" {
            let from = *out.last().expect("run start");
            let to = match toks.get(i + 1) {
                Some(n) => n.parse().expect("run end"),
                None => m,
            };
            if to > from {
                out.extend(from + 1..=to);
            } else {
                out.extend((to..from).rev());
            }
            i += 2;
        } else {
            out.push(t.parse().expect("ordinal"));
            i += 1;
        }
    }
    out
}

fn parse_move(text: &str, ord_inv: &[usize]) -> MoveKind {
    let cycles: Vec<Vec<usize>> = text
        .split(')')
        .filter(|c| !c.trim().is_empty())
        .map(|c| c.trim().trim_start_matches('(').split_whitespace().map(|t| ord_inv[t.parse::<usize>().expect("ordinal")]).collect())
        .collect();
    match cycles.as_slice() {
        [c] if c.len() == 3 => MoveKind::ThreeCycle { a: c[0], b: c[1], c: c[2] },
        [p, q] if p.len() == 2 && q.len() == 2 => MoveKind::Potdtc { a: p[0], c: p[1], b: q[0], d: q[1] },
        _ => panic!("not a 3-cycle or POTDTC: {text}"),
    }
}

/// Replays `steps` from the circuit `h0` (labels); panics with a
/// description at the first printed state that is not reproduced.
pub fn replay<'g>(cg: &'g ContractedGraph, h0: &str, steps: &[Step]) -> Replay<'g> {
    let (nodes, orient) = parse_labels(cg, h0);
    let state = HamState::with_orientation(cg, &NCycle::from_sequence(&nodes).expect("n-cycle"), orient, StateConfig::manual()).expect("state");
    continue_replay(state, steps)
}

/// Continues a replay from an existing state (ordinals restart at its current circuit).
pub fn continue_replay<'g>(mut state: HamState<'g>, steps: &[Step]) -> Replay<'g> {
    let cg = state.graph();
    let m = cg.m();
    let one = cg.node_by_label("1").expect("vertex 1").0;
    state.rebuild();
    // Fixture-side ORD tables, independent of the state so that errata can re-anchor.
    let mut ord_inv: Vec<usize> = std::iter::once(0).chain(state.sequence_from(one)).collect();
    let mut ord = vec![0; m + 1];
    let renumber = |ord_inv: &[usize], ord: &mut Vec<usize>| {
        for (o, &v) in ord_inv.iter().enumerate().skip(1) {
            ord[v] = o;
        }
    };
    renumber(&ord_inv, &mut ord);
    let mut anchored = false;
    let mut errata = Vec::new();
    let mut checks = 0;
    for (i, step) in steps.iter().enumerate() {
        let current = |state: &HamState<'_>, ord: &[usize]| -> Vec<usize> { state.sequence_from(one).into_iter().map(|v| ord[v]).collect() };
        match *step {
            Step::Move(text) => {
                let kind = parse_move(text, &ord_inv);
                state.apply_move(kind).unwrap_or_else(|e| panic!("step {i}: {text} rejected: {e}"));
            }
            Step::Rotate(a, x) => {
                state.apply_rotation(ord_inv[a], ord_inv[x]).unwrap_or_else(|e| panic!("step {i}: rotation rejected: {e}"));
            }
            Step::RotateLabels(a, x) => {
                let (a, x) = (cg.node_by_label(a).expect("label").0, cg.node_by_label(x).expect("label").0);
                state.apply_rotation(a, x).unwrap_or_else(|e| panic!("step {i}: rotation rejected: {e}"));
            }
            Step::Rebuild => {
                state.rebuild();
                ord_inv = std::iter::once(0).chain(state.sequence_from(one)).collect();
                renumber(&ord_inv, &mut ord);
                anchored = false;
            }
            Step::Abbrev(text) => {
                assert_eq!(current(&state, &ord), expand_abbreviation(text, m), "step {i}: abbreviation {text}");
                checks += 1;
            }
            Step::AbbrevExact(text) => {
                assert!(!anchored, "exact abbreviations need an un-anchored state");
                assert_eq!(state.render_abbreviation(), text, "step {i}");
                assert_eq!(render_ordinals(&current(&state, &ord), m), text, "step {i}");
                checks += 1;
            }
            Step::Circuit(text) => {
                assert_eq!(state.render_circuit(), normalize_circuit(cg, text), "step {i}: circuit");
                checks += 1;
            }
            Step::Erratum { stated, printed } => {
                let target = expand_abbreviation(printed, m);
                let kind = parse_move(stated, &ord_inv);
                let mut trial = state.clone();
                let reproduced = trial.apply_move(kind).is_ok() && current(&trial, &ord) == target;
                assert!(!reproduced, "step {i}: erratum {stated} is actually reproduced");
                let nodes: Vec<usize> = target.iter().map(|&o| ord_inv[o]).collect();
                let orient = state.orientations().to_vec();
                state = HamState::with_orientation(cg, &NCycle::from_sequence(&nodes).expect("printed n-cycle"), orient, StateConfig::manual())
                    .expect("anchored state");
                anchored = true;
                errata.push(i);
                checks += 1;
            }
        }
        state.check_integrity().unwrap_or_else(|e| panic!("step {i}: {e}"));
    }
    Replay { state, errata, checks }
}
