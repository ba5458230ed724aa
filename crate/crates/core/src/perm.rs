//! Permutation algebra on `1..=n`: n-cycles, 3-cycles, POTDTCs (products of
//! two disjoint transpositions), composition, rotations and the
//! chord-intersection admissibility criteria.
//!
//! Composition follows the right-action convention used throughout the
//! crate: `compose(h, s)` is the map `v ↦ h(s(v))`, so applying the 3-cycle
//! `(a b c)` to a circuit `h` redirects `a` to `h(b)`, `b` to `h(c)` and `c`
//! to `h(a)`.

use std::fmt;

use crate::error::{Error, Result};

/// A vertex id; always 1-based.
pub type Vertex = usize;

/// A bijection of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `map[v]` is the image of `v`; slot 0 is unused.
    map: Vec<Vertex>,
}

impl Permutation {
    /// The identity on `1..=n`.
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..=n).collect() }
    }

    /// Builds a permutation from its image list, `images[i]` being the image of `i + 1`.
    pub fn from_images(images: &[Vertex]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        let mut map = Vec::with_capacity(n + 1);
        map.push(0);
        for &img in images {
            check_vertex(img, n)?;
            if seen[img] {
                return Err(Error::InvalidInput(format!("image {img} repeated")));
            }
            seen[img] = true;
            map.push(img);
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation on `1..=n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<Vertex>]) -> Result<Self> {
        let mut map: Vec<Vertex> = (0..=n).collect();
        let mut used = vec![false; n + 1];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                check_vertex(v, n)?;
                if used[v] {
                    return Err(Error::InvalidInput(format!("vertex {v} appears twice in cycles")));
                }
                used[v] = true;
                map[v] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    /// Parses cycle notation such as `(1 4 8)(2 3)`; `()` or the empty string is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::from_cycles(n, &parse_cycles(text)?)
    }

    /// Number of points acted on.
    pub fn n(&self) -> usize {
        self.map.len() - 1
    }

    /// Image of `v`.
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.map[v]
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for v in 1..self.map.len() {
            map[self.map[v]] = v;
        }
        Permutation { map }
    }

    /// `self ∘ s`, the map `v ↦ self(s(v))`.
    pub fn compose(&self, s: &Permutation) -> Result<Permutation> {
        if self.n() != s.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: s.n() });
        }
        let map = (0..self.map.len()).map(|v| if v == 0 { 0 } else { self.map[s.map[v]] }).collect();
        Ok(Permutation { map })
    }

    /// Non-trivial cycles, each starting at its smallest vertex, ordered by that vertex.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.map[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.map[v];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        n - self.cycles().iter().map(|c| c.len() - 1).sum::<usize>()
    }

    /// True iff the permutation is a single cycle of length `n`.
    pub fn is_ncycle(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut len = 1;
        let mut v = self.map[1];
        while v != 1 {
            len += 1;
            v = self.map[v];
        }
        len == n
    }

    /// Vertices not fixed by the permutation.
    pub fn support(&self) -> Vec<Vertex> {
        (1..=self.n()).filter(|&v| self.map[v] != v).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "({})", join(&c))?;
        }
        Ok(())
    }
}

/// A clockwise circular order on `1..=n`.
///
/// Implemented by [`NCycle`] and by the search state, so the admissibility
/// criteria work against either a materialized circuit or an abbreviation.
pub trait CircularOrder {
    /// Number of vertices on the circle.
    fn order_len(&self) -> usize;
    /// Clockwise position of `v`, in `0..n`.
    fn position(&self, v: Vertex) -> usize;
    /// Clockwise successor of `v`.
    fn successor(&self, v: Vertex) -> Vertex;
}

/// An n-cycle on `1..=n`, the algebraic form of a (pseudo-)hamilton circuit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCycle {
    succ: Vec<Vertex>,
    pred: Vec<Vertex>,
    /// Position measured clockwise from vertex 1.
    pos: Vec<usize>,
}

impl NCycle {
    /// Builds the cycle visiting `seq` in order; `seq` must be a permutation of `1..=n`.
    pub fn from_sequence(seq: &[Vertex]) -> Result<Self> {
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty cycle".into()));
        }
        let mut succ = vec![0; n + 1];
        for (i, &v) in seq.iter().enumerate() {
            check_vertex(v, n)?;
            if succ[v] != 0 {
                return Err(Error::InvalidInput(format!("vertex {v} repeated in cycle")));
            }
            succ[v] = seq[(i + 1) % n];
        }
        Ok(Self::from_succ_unchecked(succ))
    }

    /// The cycle `(1 2 … n)`.
    pub fn natural(n: usize) -> Self {
        let seq: Vec<Vertex> = (1..=n).collect();
        Self::from_sequence(&seq).expect("natural order is a valid cycle")
    }

    /// Parses a single cycle such as `(1 5 6 7)`; `n` is the number of listed vertices.
    pub fn parse(text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        match cycles.as_slice() {
            [one] => Self::from_sequence(one),
            _ => Err(Error::Parse { line: 1, message: format!("expected exactly one cycle in {text:?}") }),
        }
    }

    /// Converts a permutation that is an n-cycle.
    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        if !p.is_ncycle() {
            return Err(Error::InvalidInput(format!("{p} is not an n-cycle")));
        }
        Ok(Self::from_succ_unchecked(p.map.clone()))
    }

    fn from_succ_unchecked(succ: Vec<Vertex>) -> Self {
        let n = succ.len() - 1;
        let mut pred = vec![0; n + 1];
        let mut pos = vec![0; n + 1];
        let mut v = 1;
        for i in 0..n {
            pos[v] = i;
            pred[succ[v]] = v;
            v = succ[v];
        }
        NCycle { succ, pred, pos }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.succ.len() - 1
    }

    /// Clockwise successor `H(v)`.
    pub fn succ(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }

    /// Clockwise predecessor `H⁻¹(v)`.
    pub fn pred(&self, v: Vertex) -> Vertex {
        self.pred[v]
    }

    /// Vertices in clockwise order starting at `start`.
    pub fn sequence_from(&self, start: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.n());
        let mut v = start;
        for _ in 0..self.n() {
            out.push(v);
            v = self.succ[v];
        }
        out
    }

    /// Canonical vertex sequence, starting at the smallest vertex (1).
    pub fn sequence(&self) -> Vec<Vertex> {
        self.sequence_from(1)
    }

    /// The cycle as a [`Permutation`].
    pub fn to_permutation(&self) -> Permutation {
        Permutation { map: self.succ.clone() }
    }

    /// Arcs `(v, H(v))` in canonical order.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.sequence().into_iter().map(|v| (v, self.succ[v])).collect()
    }

    /// The circuit with the subpath from `H(a)` through `x` reversed, making `(a, x)` an arc.
    pub fn rotate(&self, a: Vertex, x: Vertex) -> Result<NCycle> {
        let n = self.n();
        check_vertex(a, n)?;
        check_vertex(x, n)?;
        if x == a || x == self.succ[a] {
            return Err(Error::IdentityRotation { a, x });
        }
        let mut seq = self.sequence_from(a);
        let end = (self.pos[x] + n - self.pos[a]) % n;
        seq[1..=end].reverse();
        NCycle::from_sequence(&seq)
    }
}

impl CircularOrder for NCycle {
    fn order_len(&self) -> usize {
        self.n()
    }
    fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }
    fn successor(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }
}

impl fmt::Display for NCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.sequence()))
    }
}

/// `h ∘ s`: the permutation `v ↦ h(s(v))`.
pub fn compose(h: &NCycle, s: &Permutation) -> Result<Permutation> {
    h.to_permutation().compose(s)
}

/// True iff `p` is a single cycle of length `n`.
pub fn is_ncycle(p: &Permutation) -> bool {
    p.is_ncycle()
}

/// True iff `t` lies strictly inside the clockwise arc from `from` to `to`
/// on a circle of `len` positions.
fn strictly_between(len: usize, from: usize, to: usize, t: usize) -> bool {
    let dt = (t + len - from) % len;
    let dto = (to + len - from) % len;
    dt > 0 && dt < dto
}

/// Circular interleaving of chords `{p, q}` and `{r, s}` given as positions.
fn positions_interleave(len: usize, p: usize, q: usize, r: usize, s: usize) -> bool {
    strictly_between(len, p, q, r) != strictly_between(len, p, q, s)
}

/// True iff the chords `{p, q}` and `{r, s}` of the circle `h` properly
/// intersect: four distinct endpoints, circularly interleaved by position.
pub fn chords_properly_intersect<O: CircularOrder + ?Sized>(h: &O, p: Vertex, q: Vertex, r: Vertex, s: Vertex) -> bool {
    if p == q || p == r || p == s || q == r || q == s || r == s {
        return false;
    }
    let len = h.order_len();
    positions_interleave(len, h.position(p), h.position(q), h.position(r), h.position(s))
}

/// True iff `h·(a b c)` is an n-cycle.
///
/// The witness arcs `(a, H(b))` and `(b, H(c))` must cross as chords.  Arcs
/// can share an endpoint (for instance when `H(b) = c`), so each chord
/// `(x, H(y))` is drawn from just after `x` to just before `H(y)`, which keeps
/// all four endpoints distinct and reduces the test to strict interleaving.
/// The result agrees with `a, b, c` occurring clockwise on `h`.
pub fn is_admissible_3cycle<O: CircularOrder + ?Sized>(h: &O, a: Vertex, b: Vertex, c: Vertex) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let len = 4 * h.order_len();
    let (pa, pb, pc) = (h.position(a), h.position(b), h.position(c));
    positions_interleave(len, 4 * pa + 1, 4 * pb + 3, 4 * pb + 1, 4 * pc + 3)
}

/// True iff `h·(a c)(b d)` is an n-cycle, i.e. the chords `(a, c)` and
/// `(b, d)` properly intersect.
pub fn is_admissible_potdtc<O: CircularOrder + ?Sized>(h: &O, a: Vertex, c: Vertex, b: Vertex, d: Vertex) -> bool {
    chords_properly_intersect(h, a, c, b, d)
}

/// The permutation `r = h⁻¹h′` where `h′` is `h` rotated by the chord `(a, x)`.
pub fn rotation_permutation(h: &NCycle, a: Vertex, x: Vertex) -> Result<Permutation> {
    let rotated = h.rotate(a, x)?;
    h.to_permutation().inverse().compose(&rotated.to_permutation())
}

/// The two move shapes used by the search algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// The 3-cycle `(a b c)`.
    ThreeCycle { a: Vertex, b: Vertex, c: Vertex },
    /// The POTDTC `(a c)(b d)`.
    Potdtc { a: Vertex, c: Vertex, b: Vertex, d: Vertex },
}

impl MoveKind {
    /// Moved vertices, in the order `a b c` or `a c b d`.
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => vec![a, b, c],
            MoveKind::Potdtc { a, c, b, d } => vec![a, c, b, d],
        }
    }

    /// True iff all moved vertices are distinct.
    pub fn is_well_formed(&self) -> bool {
        let v = self.vertices();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
    }

    /// Image `s(v)` of a vertex under the move.
    pub fn image(&self, v: Vertex) -> Vertex {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => {
                if v == a {
                    b
                } else if v == b {
                    c
                } else if v == c {
                    a
                } else {
                    v
                }
            }
            MoveKind::Potdtc { a, c, b, d } => {
                if v == a {
                    c
                } else if v == c {
                    a
                } else if v == b {
                    d
                } else if v == d {
                    b
                } else {
                    v
                }
            }
        }
    }

    /// The inverse move: `(a c b)` for `(a b c)`; a POTDTC is its own inverse.
    pub fn inverse(&self) -> MoveKind {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => MoveKind::ThreeCycle { a, b: c, c: b },
            p @ MoveKind::Potdtc { .. } => p,
        }
    }

    /// Canonical representative: 3-cycles start at their smallest vertex,
    /// POTDTC transpositions are sorted internally and by first element.
    pub fn canonical(&self) -> MoveKind {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => {
                if a < b && a < c {
                    MoveKind::ThreeCycle { a, b, c }
                } else if b < c {
                    MoveKind::ThreeCycle { a: b, b: c, c: a }
                } else {
                    MoveKind::ThreeCycle { a: c, b: a, c: b }
                }
            }
            MoveKind::Potdtc { a, c, b, d } => {
                let t1 = (a.min(c), a.max(c));
                let t2 = (b.min(d), b.max(d));
                let (x, y) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
                MoveKind::Potdtc { a: x.0, c: x.1, b: y.0, d: y.1 }
            }
        }
    }

    /// True iff both describe the same permutation.
    pub fn same_permutation(&self, other: &MoveKind) -> bool {
        self.canonical() == other.canonical()
    }

    /// The move as a permutation of `1..=n`.
    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => Permutation::from_cycles(n, &[vec![a, b, c]]),
            MoveKind::Potdtc { a, c, b, d } => Permutation::from_cycles(n, &[vec![a, c], vec![b, d]]),
        }
    }

    /// True iff the move is admissible for the circular order `h`.
    pub fn is_admissible<O: CircularOrder + ?Sized>(&self, h: &O) -> bool {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => is_admissible_3cycle(h, a, b, c),
            MoveKind::Potdtc { a, c, b, d } => is_admissible_potdtc(h, a, c, b, d),
        }
    }

    /// Parses `(a b c)` or `(a c)(b d)`.
    pub fn parse(text: &str) -> Result<MoveKind> {
        let cycles = parse_cycles(text)?;
        let bad = || Error::Parse { line: 1, message: format!("not a 3-cycle or POTDTC: {text:?}") };
        let kind = match cycles.as_slice() {
            [c] if c.len() == 3 => MoveKind::ThreeCycle { a: c[0], b: c[1], c: c[2] },
            [x, y] if x.len() == 2 && y.len() == 2 => MoveKind::Potdtc { a: x[0], c: x[1], b: y[0], d: y[1] },
            _ => return Err(bad()),
        };
        if kind.is_well_formed() {
            Ok(kind)
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveKind::ThreeCycle { a, b, c } => write!(f, "({a} {b} {c})"),
            MoveKind::Potdtc { a, c, b, d } => write!(f, "({a} {c})({b} {d})"),
        }
    }
}

/// An admissible candidate move with its witness arcs and SCORE.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSet {
    /// The move itself.
    pub kind: MoveKind,
    /// The arcs `(v, H(s(v)))` the move would place on the circuit.
    pub witness_arcs: Vec<(Vertex, Vertex)>,
    /// Witness arcs present in the graph minus moved vertices that are arc vertices.
    pub score: i64,
}

impl MoveSet {
    /// Computes the witness arcs of `kind` against `h`; the score starts at 0.
    pub fn witness<O: CircularOrder + ?Sized>(h: &O, kind: MoveKind) -> MoveSet {
        let witness_arcs = kind.vertices().into_iter().map(|v| (v, h.successor(kind.image(v)))).collect();
        MoveSet { kind, witness_arcs, score: 0 }
    }

    /// Witness arcs and SCORE against `h` and the arc predicate `is_arc`.
    pub fn scored<O, F>(h: &O, kind: MoveKind, is_arc: F) -> MoveSet
    where
        O: CircularOrder + ?Sized,
        F: Fn(Vertex, Vertex) -> bool,
    {
        let mut m = Self::witness(h, kind);
        let gained = m.witness_arcs.iter().filter(|&&(u, v)| is_arc(u, v)).count() as i64;
        let lost = kind.vertices().into_iter().filter(|&v| is_arc(v, h.successor(v))).count() as i64;
        m.score = gained - lost;
        m
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// Parses cycle notation into vertex lists: `(1 2 3)(4 5)`; commas allowed.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<Vertex>>> {
    let err = |m: String| Error::Parse { line: 1, message: m };
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err(format!("expected '(' in {text:?}")));
        }
        let close = rest.find(')').ok_or_else(|| err(format!("unclosed cycle in {text:?}")))?;
        let body = &rest[1..close];
        let cycle: Vec<Vertex> = body
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Vertex>().map_err(|e| err(format!("bad vertex {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub(crate) fn check_vertex(v: Vertex, n: usize) -> Result<()> {
    if v == 0 || v > n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

pub(crate) fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
