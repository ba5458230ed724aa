//! C ABI for `hamperm`.
//!
//! Graphs and circuits cross the boundary as opaque handles
//! ([`HampermGraph`], [`HampermCircuit`]) created and freed by this library.
//! Every fallible function returns a [`HampermStatus`]; on failure the
//! message is available from [`hamperm_last_error`] on the same thread.
//! Panics never unwind into C: they are caught and reported as
//! [`HampermStatus::Panic`].  The header `include/hamperm.h` is generated
//! from this file by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::atomic::AtomicBool;

use hamperm::ap::{self, Assignment, CostMatrix, Phase1Config, Phase3Config};
use hamperm::graph::{parse_graph, BaseGraph};
use hamperm::random::{self, Ensemble, EnsembleSpec};
use hamperm::search::{self, Algo, SearchConfig};
use hamperm::{Error, NCycle};

/// Result codes of every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HampermStatus {
    /// Success.
    Ok = 0,
    /// The search budget ran out without a circuit.
    Exhausted = 1,
    /// Malformed text, out-of-range values or mismatched sizes.
    InvalidInput = 2,
    /// A required pointer argument was NULL.
    NullPointer = 3,
    /// Structural evidence that no hamilton circuit exists.
    NotHamiltonian = 4,
    /// A circuit is not a hamilton circuit of the graph.
    VerificationFailed = 5,
    /// An internal invariant failed.
    Internal = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// Search variants.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HampermAlgo {
    /// Algorithm G (graphs, with contraction and rotations).
    G = 0,
    /// Algorithm G on the uncontracted graph.
    GNoR = 1,
    /// Algorithm G with rotation-first handling of all-zero iterations.
    GHeur = 2,
    /// Algorithm D (digraphs).
    D = 3,
}

/// Random ensembles for [`hamperm_graph_generate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HampermEnsemble {
    /// Edges in random order until the minimum degree is 2.
    Boll = 0,
    /// Arcs in random order until every in- and out-degree is ≥ 1.
    FriezeBoll = 1,
    /// `param` random out-arcs and in-arcs per vertex.
    KInKOut = 2,
    /// `param` random out-choices per vertex, symmetrized.
    RegularOut = 3,
    /// `param` uniformly random edges.
    Gnm = 4,
}

/// An undirected graph or a digraph.
pub struct HampermGraph {
    inner: BaseGraph,
}

/// A circuit (n-cycle) over `1..=n`.
pub struct HampermCircuit {
    inner: NCycle,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HampermStatus {
    match e {
        Error::NotHamiltonian(_) | Error::ContractionCycle { .. } => HampermStatus::NotHamiltonian,
        Error::Verification(_) => HampermStatus::VerificationFailed,
        Error::Internal(_) => HampermStatus::Internal,
        _ => HampermStatus::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<HampermStatus, (HampermStatus, String)>) -> HampermStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == HampermStatus::Ok {
                set_last_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_last_error(&msg);
            s
        }
        Err(_) => {
            set_last_error("panic inside hamperm");
            HampermStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HampermStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (HampermStatus, String) {
    (HampermStatus::NullPointer, format!("{what} is NULL"))
}

/// # Safety
/// `p` must be NULL or a valid NUL-terminated string.
unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HampermStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HampermStatus::InvalidInput, format!("{what} is not UTF-8")))
}

/// # Safety
/// `costs` must be NULL or point to `n·n` readable doubles.
unsafe fn matrix_arg(costs: *const f64, n: usize) -> Result<CostMatrix, (HampermStatus, String)> {
    if costs.is_null() {
        return Err(null_err("costs"));
    }
    let len = n.checked_mul(n).ok_or((HampermStatus::InvalidInput, "n·n overflows".to_string()))?;
    let flat = std::slice::from_raw_parts(costs, len);
    let rows: Vec<Vec<f64>> = flat.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
    CostMatrix::from_rows(&rows).map_err(lib_err)
}

/// Writes the images `perm(1), …, perm(n)` (1-based) into `out`.
///
/// # Safety
/// `out` must point to `n` writable `size_t`.
unsafe fn write_images(p: &hamperm::Permutation, out: *mut usize) {
    for v in 1..=p.n() {
        *out.add(v - 1) = p.apply(v);
    }
}

/// The message of the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hamperm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hamperm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the graph file format (`graph n` / `digraph n` header, then
/// `v: a, b` or `u v` lines) into a new graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hamperm_graph_parse(text: *const c_char, out: *mut *mut HampermGraph) -> HampermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let g = parse_graph(text_arg(text, "text")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HampermGraph { inner: g }));
        Ok(HampermStatus::Ok)
    })
}

/// Draws a random graph or digraph.  `param` is `k` for
/// [`HampermEnsemble::KInKOut`], `i` for [`HampermEnsemble::RegularOut`],
/// the edge count for [`HampermEnsemble::Gnm`] and ignored otherwise.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hamperm_graph_generate(
    ensemble: HampermEnsemble,
    n: usize,
    param: usize,
    seed: u64,
    out: *mut *mut HampermGraph,
) -> HampermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let kind = match ensemble {
            HampermEnsemble::Boll => Ensemble::Boll,
            HampermEnsemble::FriezeBoll => Ensemble::FriezeBoll,
            HampermEnsemble::KInKOut => Ensemble::KInKOut(param),
            HampermEnsemble::RegularOut => Ensemble::RegularOut(param),
            HampermEnsemble::Gnm => Ensemble::ErdosRenyiM(param),
        };
        let g = EnsembleSpec { kind, n, seed }.generate().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HampermGraph { inner: g }));
        Ok(HampermStatus::Ok)
    })
}

/// Number of vertices of a graph (0 for NULL).
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn hamperm_graph_vertex_count(g: *const HampermGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// Whether a graph handle holds a digraph (false for NULL).
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn hamperm_graph_is_directed(g: *const HampermGraph) -> bool {
    g.as_ref().is_some_and(|g| g.inner.is_directed())
}

/// Frees a graph handle; NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hamperm_graph_free(g: *mut HampermGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Searches for a hamilton circuit.  `max_iters` is the per-phase budget
/// (0 for the default `⌈2 m ln m⌉`).  On [`HampermStatus::Ok`] `*out`
/// receives a verified circuit; on [`HampermStatus::Exhausted`] it is set to NULL.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hamperm_search(
    g: *const HampermGraph,
    algo: HampermAlgo,
    seed: u64,
    max_iters: usize,
    out: *mut *mut HampermCircuit,
) -> HampermStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = ptr::null_mut();
        let algo = match algo {
            HampermAlgo::G => Algo::G,
            HampermAlgo::GNoR => Algo::GNoR,
            HampermAlgo::GHeur => Algo::GHeur,
            HampermAlgo::D => Algo::D,
        };
        let cfg = SearchConfig { seed, max_iterations: (max_iters > 0).then_some(max_iters), ..SearchConfig::default() };
        let r = search::run_algo(&g.inner, &cfg, algo, &AtomicBool::new(false)).map_err(lib_err)?;
        match r.circuit() {
            Some(c) => {
                g.inner.verify_circuit(c).map_err(lib_err)?;
                *out = Box::into_raw(Box::new(HampermCircuit { inner: c.clone() }));
                Ok(HampermStatus::Ok)
            }
            None => Err((HampermStatus::Exhausted, format!("no circuit within {} iterations", r.iterations))),
        }
    })
}

/// Parses a circuit in cycle notation, e.g. `"(1 2 3 4)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hamperm_circuit_parse(text: *const c_char, out: *mut *mut HampermCircuit) -> HampermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let c = NCycle::parse(text_arg(text, "text")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HampermCircuit { inner: c }));
        Ok(HampermStatus::Ok)
    })
}

/// Number of vertices on a circuit (0 for NULL).
///
/// # Safety
/// `c` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn hamperm_circuit_len(c: *const HampermCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.inner.n())
}

/// Copies the circuit's vertex sequence, starting at vertex 1, into `buf`.
///
/// # Safety
/// `c` must be a live circuit handle; `buf` must point to `cap` writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn hamperm_circuit_vertices(c: *const HampermCircuit, buf: *mut usize, cap: usize) -> HampermStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null_err("circuit"))?;
        if buf.is_null() {
            return Err(null_err("buf"));
        }
        let seq = c.inner.sequence();
        if cap < seq.len() {
            return Err((HampermStatus::InvalidInput, format!("buffer holds {cap} vertices, circuit has {}", seq.len())));
        }
        ptr::copy_nonoverlapping(seq.as_ptr(), buf, seq.len());
        Ok(HampermStatus::Ok)
    })
}

/// The circuit in cycle notation; free with [`hamperm_string_free`].  NULL on failure.
///
/// # Safety
/// `c` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn hamperm_circuit_to_string(c: *const HampermCircuit) -> *mut c_char {
    match c.as_ref() {
        Some(c) => CString::new(c.inner.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Frees a circuit handle; NULL is ignored.
///
/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hamperm_circuit_free(c: *mut HampermCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Frees a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hamperm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks that `c` is a hamilton circuit (cycle) of `g`;
/// [`HampermStatus::VerificationFailed`] names the missing edge.
///
/// # Safety
/// `g` and `c` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn hamperm_verify(g: *const HampermGraph, c: *const HampermCircuit) -> HampermStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        let c = c.as_ref().ok_or_else(|| null_err("circuit"))?;
        g.inner.verify_circuit(&c.inner).map_err(lib_err)?;
        Ok(HampermStatus::Ok)
    })
}

/// The exact two-admissible lower bound for `n ≥ 7`, clamped to `[0, 1]`, as a double.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hamperm_p_two_admissible(n: usize, out: *mut f64) -> HampermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = hamperm::prob::p_two_admissible(n).map_err(lib_err)?.to_f64();
        Ok(HampermStatus::Ok)
    })
}

/// Optimal assignment over derangements of the row-major `n × n` matrix
/// `costs` (diagonal ignored; `INFINITY` forbids an entry).  Writes the
/// 1-based images into `out_images[0..n]` and the value into `*out_value`.
///
/// # Safety
/// `costs` must point to `n·n` doubles, `out_images` to `n` writable
/// `size_t`, `out_value` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn hamperm_ap_solve(
    costs: *const f64,
    n: usize,
    seed: u64,
    out_images: *mut usize,
    out_value: *mut f64,
) -> HampermStatus {
    guard(|| {
        if out_images.is_null() || out_value.is_null() {
            return Err(null_err("output"));
        }
        let m = matrix_arg(costs, n)?;
        let start = Assignment::random_ncycle(&m, &mut random::rng(seed, 0)).map_err(lib_err)?;
        let (a1, _) = ap::phase1(&m, &start, &Phase1Config::default()).map_err(lib_err)?;
        let (opt, _) = ap::phase2(&m, &a1).map_err(lib_err)?;
        write_images(&opt.perm, out_images);
        *out_value = opt.value;
        Ok(HampermStatus::Ok)
    })
}

/// A tour through the assignment pipeline.  Writes the tour's 1-based
/// successor images, its value, and whether it was certified optimal.
///
/// # Safety
/// As [`hamperm_ap_solve`], plus `out_optimal` must be a writable bool.
#[no_mangle]
pub unsafe extern "C" fn hamperm_tsp_fw(
    costs: *const f64,
    n: usize,
    seed: u64,
    out_images: *mut usize,
    out_value: *mut f64,
    out_optimal: *mut bool,
) -> HampermStatus {
    guard(|| {
        if out_images.is_null() || out_value.is_null() || out_optimal.is_null() {
            return Err(null_err("output"));
        }
        let m = matrix_arg(costs, n)?;
        let start = Assignment::random_ncycle(&m, &mut random::rng(seed, 0)).map_err(lib_err)?;
        let (a1, history) = ap::phase1(&m, &start, &Phase1Config::default()).map_err(lib_err)?;
        let (opt, _) = ap::phase2(&m, &a1).map_err(lib_err)?;
        let r = ap::phase3(&m, &opt, &history, &Phase3Config { seed, ..Phase3Config::default() }).map_err(lib_err)?;
        write_images(&r.tour, out_images);
        *out_value = r.value;
        *out_optimal = r.optimal;
        Ok(HampermStatus::Ok)
    })
}
