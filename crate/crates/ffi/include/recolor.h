#ifndef RECOLOR_H
#define RECOLOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RecolorStatus {
  RECOLOR_STATUS_OK = 0,
  RECOLOR_STATUS_NULL_POINTER = 1,
  RECOLOR_STATUS_INVALID_UTF8 = 2,
  RECOLOR_STATUS_PARSE_ERROR = 3,
  RECOLOR_STATUS_INVALID_ARGUMENT = 4,
  RECOLOR_STATUS_IO_ERROR = 5,
  RECOLOR_STATUS_BUFFER_TOO_SMALL = 6,
  RECOLOR_STATUS_PANIC = 7,
} RecolorStatus;

typedef enum RecolorRecolor {
  RECOLOR_RECOLOR_RANDOM = 0,
  RECOLOR_RECOLOR_LEAST_SELECTION = 1,
} RecolorRecolor;

typedef enum RecolorEngine {
  RECOLOR_ENGINE_TABUCOL = 0,
  RECOLOR_ENGINE_PARTIALCOL = 1,
} RecolorEngine;

typedef enum RecolorTenure {
  RECOLOR_TENURE_DYN = 0,
  RECOLOR_TENURE_FOO = 1,
} RecolorTenure;

typedef enum RecolorInit {
  RECOLOR_INIT_RECYCLE_STAR = 0,
  /**
   * Dissolve `recycle_t` random classes.
   */
  RECOLOR_INIT_RECYCLE_T = 1,
  RECOLOR_INIT_GREEDY = 2,
  RECOLOR_INIT_RANDOM = 3,
} RecolorInit;

/**
 * Opaque graph handle.
 */
typedef struct RecolorGraph RecolorGraph;

/**
 * Opaque result of `recolor_solve`.
 */
typedef struct RecolorRun RecolorRun;

typedef struct RecolorSolveOptions {
  enum RecolorEngine engine;
  enum RecolorTenure tenure;
  enum RecolorInit init;
  size_t recycle_t;
  enum RecolorRecolor recolor;
  /**
   * Wall-clock budget for the whole run, in seconds.
   */
  double time_limit_s;
  /**
   * Iteration cap per k-level; 0 means none.
   */
  uint64_t iter_cap;
  uint64_t seed;
} RecolorSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *recolor_last_error_message(void);

/**
 * Parses DIMACS text (`p edge n m` / `e u v`).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RecolorStatus recolor_graph_from_dimacs(const char *text, struct RecolorGraph **out);

/**
 * Loads a DIMACS file, or a Carter `.stu` student file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RecolorStatus recolor_graph_from_file(const char *path, struct RecolorGraph **out);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2 * m` 0-based
 * endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` values and `out` must be a valid pointer.
 */
enum RecolorStatus recolor_graph_from_edges(size_t n,
                                            const uint32_t *edges,
                                            size_t m,
                                            struct RecolorGraph **out);

/**
 * # Safety
 * `g` must come from a `recolor_graph_from_*` call and not be freed twice.
 */
void recolor_graph_free(struct RecolorGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null (which yields 0).
 */
size_t recolor_graph_vertex_count(const struct RecolorGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null (which yields 0).
 */
size_t recolor_graph_edge_count(const struct RecolorGraph *g);

/**
 * DSATUR coloring: writes `n` colors to `colors_out` and the color count to `k_out`.
 *
 * # Safety
 * `colors_out` must have room for `n` values; `k_out` must be valid.
 */
enum RecolorStatus recolor_dsatur(const struct RecolorGraph *g,
                                  uint64_t seed,
                                  uint32_t *colors_out,
                                  size_t *k_out);

/**
 * Number of conflicting edges of a complete k-coloring.
 *
 * # Safety
 * `colors` must hold `n` values in `1..=k`; `out` must be valid.
 */
enum RecolorStatus recolor_penalty(const struct RecolorGraph *g,
                                   const uint32_t *colors,
                                   size_t k,
                                   size_t *out);

/**
 * Recycles a legal (k+1)-coloring into a complete k-coloring. `t = 0`
 * dissolves the smallest class; otherwise `t` random classes.
 *
 * # Safety
 * `colors` must hold `n` values in `1..=k_plus_one`; `colors_out` must have
 * room for `n` values.
 */
enum RecolorStatus recolor_recycle_complete(const struct RecolorGraph *g,
                                            const uint32_t *colors,
                                            size_t k_plus_one,
                                            size_t t,
                                            enum RecolorRecolor recolor,
                                            uint64_t seed,
                                            uint32_t *colors_out);

/**
 * Recycles a legal (k+1)-coloring into a conflict-free partial k-coloring;
 * uncolored vertices are written as 0.
 *
 * # Safety
 * As `recolor_recycle_complete`.
 */
enum RecolorStatus recolor_recycle_partial(const struct RecolorGraph *g,
                                           const uint32_t *colors,
                                           size_t k_plus_one,
                                           size_t t,
                                           uint64_t seed,
                                           uint32_t *colors_out);

/**
 * Tabucol, Dyn tenure, smallest-class recycling, 600 s, no iteration cap, seed 0.
 */
struct RecolorSolveOptions recolor_solve_options_default(void);

/**
 * Runs the iterative scheme. `options` may be null for the defaults.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum RecolorStatus recolor_solve(const struct RecolorGraph *g,
                                 const struct RecolorSolveOptions *options,
                                 struct RecolorRun **out);

/**
 * Smallest k for which the run held a legal coloring; 0 for a null handle.
 *
 * # Safety
 * `run` must be a live run handle or null.
 */
size_t recolor_run_best_k(const struct RecolorRun *run);

/**
 * # Safety
 * `run` must be a live run handle or null.
 */
size_t recolor_run_dsatur_k(const struct RecolorRun *run);

/**
 * Copies the best coloring into `colors_out`, which holds `len` values.
 *
 * # Safety
 * `colors_out` must have room for `len` values.
 */
enum RecolorStatus recolor_run_coloring(const struct RecolorRun *run,
                                        uint32_t *colors_out,
                                        size_t len);

/**
 * The full run record as JSON. Release with `recolor_string_free`.
 *
 * # Safety
 * `run` must be a live run handle and `out` a valid pointer.
 */
enum RecolorStatus recolor_run_to_json(const struct RecolorRun *run, char **out);

/**
 * # Safety
 * `s` must come from `recolor_run_to_json` or be null.
 */
void recolor_string_free(char *s);

/**
 * # Safety
 * `run` must come from `recolor_solve` and not be freed twice.
 */
void recolor_run_free(struct RecolorRun *run);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECOLOR_H */
