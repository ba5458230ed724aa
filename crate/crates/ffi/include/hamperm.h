#ifndef HAMPERM_H
#define HAMPERM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Search variants.
 */
typedef enum HampermAlgo {
  /**
   * Algorithm G (graphs, with contraction and rotations).
   */
  HAMPERM_ALGO_G = 0,
  /**
   * Algorithm G on the uncontracted graph.
   */
  HAMPERM_ALGO_G_NO_R = 1,
  /**
   * Algorithm G with rotation-first handling of all-zero iterations.
   */
  HAMPERM_ALGO_G_HEUR = 2,
  /**
   * Algorithm D (digraphs).
   */
  HAMPERM_ALGO_D = 3,
} HampermAlgo;

/**
 * Random ensembles for [`hamperm_graph_generate`].
 */
typedef enum HampermEnsemble {
  /**
   * Edges in random order until the minimum degree is 2.
   */
  HAMPERM_ENSEMBLE_BOLL = 0,
  /**
   * Arcs in random order until every in- and out-degree is ≥ 1.
   */
  HAMPERM_ENSEMBLE_FRIEZE_BOLL = 1,
  /**
   * `param` random out-arcs and in-arcs per vertex.
   */
  HAMPERM_ENSEMBLE_K_IN_K_OUT = 2,
  /**
   * `param` random out-choices per vertex, symmetrized.
   */
  HAMPERM_ENSEMBLE_REGULAR_OUT = 3,
  /**
   * `param` uniformly random edges.
   */
  HAMPERM_ENSEMBLE_GNM = 4,
} HampermEnsemble;

/**
 * Result codes of every fallible function.
 */
typedef enum HampermStatus {
  /**
   * Success.
   */
  HAMPERM_STATUS_OK = 0,
  /**
   * The search budget ran out without a circuit.
   */
  HAMPERM_STATUS_EXHAUSTED = 1,
  /**
   * Malformed text, out-of-range values or mismatched sizes.
   */
  HAMPERM_STATUS_INVALID_INPUT = 2,
  /**
   * A required pointer argument was NULL.
   */
  HAMPERM_STATUS_NULL_POINTER = 3,
  /**
   * Structural evidence that no hamilton circuit exists.
   */
  HAMPERM_STATUS_NOT_HAMILTONIAN = 4,
  /**
   * A circuit is not a hamilton circuit of the graph.
   */
  HAMPERM_STATUS_VERIFICATION_FAILED = 5,
  /**
   * An internal invariant failed.
   */
  HAMPERM_STATUS_INTERNAL = 6,
  /**
   * A panic was caught at the boundary.
   */
  HAMPERM_STATUS_PANIC = 7,
} HampermStatus;

/**
 * A circuit (n-cycle) over `1..=n`.
 */
typedef struct HampermCircuit HampermCircuit;

/**
 * An undirected graph or a digraph.
 */
typedef struct HampermGraph HampermGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *hamperm_last_error(void);

/**
 * The library version as a static NUL-terminated string.
 */
const char *hamperm_version(void);

/**
 * Parses the graph file format (`graph n` / `digraph n` header, then
 * `v: a, b` or `u v` lines) into a new graph handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a writable pointer.
 */
enum HampermStatus hamperm_graph_parse(const char *text, struct HampermGraph **out);

/**
 * Draws a random graph or digraph.  `param` is `k` for
 * [`HampermEnsemble::KInKOut`], `i` for [`HampermEnsemble::RegularOut`],
 * the edge count for [`HampermEnsemble::Gnm`] and ignored otherwise.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum HampermStatus hamperm_graph_generate(enum HampermEnsemble ensemble,
                                          size_t n,
                                          size_t param,
                                          uint64_t seed,
                                          struct HampermGraph **out);

/**
 * Number of vertices of a graph (0 for NULL).
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t hamperm_graph_vertex_count(const struct HampermGraph *g);

/**
 * Whether a graph handle holds a digraph (false for NULL).
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
bool hamperm_graph_is_directed(const struct HampermGraph *g);

/**
 * Frees a graph handle; NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle not yet freed.
 */
void hamperm_graph_free(struct HampermGraph *g);

/**
 * Searches for a hamilton circuit.  `max_iters` is the per-phase budget
 * (0 for the default `⌈2 m ln m⌉`).  On [`HampermStatus::Ok`] `*out`
 * receives a verified circuit; on [`HampermStatus::Exhausted`] it is set to NULL.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be a writable pointer.
 */
enum HampermStatus hamperm_search(const struct HampermGraph *g,
                                  enum HampermAlgo algo,
                                  uint64_t seed,
                                  size_t max_iters,
                                  struct HampermCircuit **out);

/**
 * Parses a circuit in cycle notation, e.g. `"(1 2 3 4)"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a writable pointer.
 */
enum HampermStatus hamperm_circuit_parse(const char *text, struct HampermCircuit **out);

/**
 * Number of vertices on a circuit (0 for NULL).
 *
 * # Safety
 * `c` must be NULL or a live circuit handle.
 */
size_t hamperm_circuit_len(const struct HampermCircuit *c);

/**
 * Copies the circuit's vertex sequence, starting at vertex 1, into `buf`.
 *
 * # Safety
 * `c` must be a live circuit handle; `buf` must point to `cap` writable `size_t`.
 */
enum HampermStatus hamperm_circuit_vertices(const struct HampermCircuit *c,
                                            size_t *buf,
                                            size_t cap);

/**
 * The circuit in cycle notation; free with [`hamperm_string_free`].  NULL on failure.
 *
 * # Safety
 * `c` must be NULL or a live circuit handle.
 */
char *hamperm_circuit_to_string(const struct HampermCircuit *c);

/**
 * Frees a circuit handle; NULL is ignored.
 *
 * # Safety
 * `c` must be NULL or a handle not yet freed.
 */
void hamperm_circuit_free(struct HampermCircuit *c);

/**
 * Frees a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void hamperm_string_free(char *s);

/**
 * Checks that `c` is a hamilton circuit (cycle) of `g`;
 * [`HampermStatus::VerificationFailed`] names the missing edge.
 *
 * # Safety
 * `g` and `c` must be live handles.
 */
enum HampermStatus hamperm_verify(const struct HampermGraph *g, const struct HampermCircuit *c);

/**
 * The exact two-admissible lower bound for `n ≥ 7`, clamped to `[0, 1]`, as a double.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum HampermStatus hamperm_p_two_admissible(size_t n, double *out);

/**
 * Optimal assignment over derangements of the row-major `n × n` matrix
 * `costs` (diagonal ignored; `INFINITY` forbids an entry).  Writes the
 * 1-based images into `out_images[0..n]` and the value into `*out_value`.
 *
 * # Safety
 * `costs` must point to `n·n` doubles, `out_images` to `n` writable
 * `size_t`, `out_value` to a writable double.
 */
enum HampermStatus hamperm_ap_solve(const double *costs,
                                    size_t n,
                                    uint64_t seed,
                                    size_t *out_images,
                                    double *out_value);

/**
 * A tour through the assignment pipeline.  Writes the tour's 1-based
 * successor images, its value, and whether it was certified optimal.
 *
 * # Safety
 * As [`hamperm_ap_solve`], plus `out_optimal` must be a writable bool.
 */
enum HampermStatus hamperm_tsp_fw(const double *costs,
                                  size_t n,
                                  uint64_t seed,
                                  size_t *out_images,
                                  double *out_value,
                                  bool *out_optimal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAMPERM_H */
