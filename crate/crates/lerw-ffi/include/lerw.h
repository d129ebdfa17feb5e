/* C ABI for the lerw walk-generation and loop-erasure core. */

#ifndef LERW_H
#define LERW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by fallible calls.
 */
typedef enum LerwStatus {
  LerwOk = 0,
  LerwNullPointer = 1,
  LerwInvalidArgument = 2,
  LerwOutOfRange = 3,
} LerwStatus;

/**
 * The result of one loop-erasing pass (opaque).
 */
typedef struct LerwTrace LerwTrace;

/**
 * A simple-random-walk path on `Z^d` (opaque).
 */
typedef struct LerwWalk LerwWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Crate version as a static NUL-terminated string.
 */
const char *lerw_version(void);

/**
 * Generate an `n_steps`-step walk on `Z^dim` from the deterministic stream
 * `(master_seed, stream_index)`. Returns NULL when `dim` is 0.
 * Free with `lerw_walk_free`.
 */
struct LerwWalk *lerw_walk_generate(uint64_t master_seed,
                                    uint64_t stream_index,
                                    uint64_t n_steps,
                                    uint32_t dim);

/**
 * # Safety
 * `walk` must be NULL or a pointer returned by `lerw_walk_generate` that has
 * not been freed.
 */
void lerw_walk_free(struct LerwWalk *walk);

/**
 * Number of points (steps + 1); 0 for NULL.
 *
 * # Safety
 * `walk` must be NULL or a live walk handle.
 */
uint64_t lerw_walk_num_points(const struct LerwWalk *walk);

/**
 * Lattice dimension; 0 for NULL.
 *
 * # Safety
 * `walk` must be NULL or a live walk handle.
 */
uint32_t lerw_walk_dim(const struct LerwWalk *walk);

/**
 * Copy the coordinates of point `index` into `out` (length `dim`).
 *
 * # Safety
 * `walk` must be NULL or a live walk handle; `out` must be NULL or point to
 * at least `dim` writable `int64_t`.
 */
enum LerwStatus lerw_walk_point(const struct LerwWalk *walk, uint64_t index, int64_t *out);

/**
 * `floor(N^alpha)` clamped to `[1, path_len]`; `alpha = INFINITY` maps to
 * `path_len`.
 *
 * # Safety
 * `out` must be NULL or point to a writable `uint64_t`.
 */
enum LerwStatus lerw_window_length(uint64_t n_scale,
                                   double alpha,
                                   uint64_t path_len,
                                   uint64_t *out);

/**
 * Erase all loops of index span at most `window`. Returns NULL for NULL
 * input or `window == 0`. Free with `lerw_trace_free`.
 *
 * # Safety
 * `walk` must be NULL or a live walk handle.
 */
struct LerwTrace *lerw_erase_windowed(const struct LerwWalk *walk, uint64_t window);

/**
 * Classical full loop erasure (the whole path as the window).
 *
 * # Safety
 * `walk` must be NULL or a live walk handle.
 */
struct LerwTrace *lerw_erase_full(const struct LerwWalk *walk);

/**
 * # Safety
 * `trace` must be NULL or a pointer returned by one of the erase functions
 * that has not been freed.
 */
void lerw_trace_free(struct LerwTrace *trace);

/**
 * Number of jump times (erased-path points); 0 for NULL.
 *
 * # Safety
 * `trace` must be NULL or a live trace handle.
 */
uint64_t lerw_trace_num_jumps(const struct LerwTrace *trace);

/**
 * The `i`-th jump time `sigma(i)`.
 *
 * # Safety
 * `trace` must be NULL or a live trace handle; `out` must be NULL or point
 * to a writable `uint64_t`.
 */
enum LerwStatus lerw_trace_sigma(const struct LerwTrace *trace, uint64_t i, uint64_t *out);

/**
 * Whether path index `n` survives erasure (is a jump time).
 *
 * # Safety
 * `trace` must be NULL or a live trace handle; `out` must be NULL or point
 * to a writable `bool`.
 */
enum LerwStatus lerw_trace_y_flag(const struct LerwTrace *trace, uint64_t n, bool *out);

/**
 * Number of surviving indices among `0..=n`.
 *
 * # Safety
 * `trace` must be NULL or a live trace handle; `out` must be NULL or point
 * to a writable `uint64_t`.
 */
enum LerwStatus lerw_trace_rho(const struct LerwTrace *trace, uint64_t n, uint64_t *out);

/**
 * Copy the coordinates of erased-path point `i` into `out` (length `dim`).
 *
 * # Safety
 * `trace` must be NULL or a live trace handle; `out` must be NULL or point
 * to at least `dim` writable `int64_t`.
 */
enum LerwStatus lerw_trace_point(const struct LerwTrace *trace, uint64_t i, int64_t *out);

/**
 * Fill `out_mask` (length `lerw_walk_num_points`) with the loop-free
 * indicator: true where the index lies in no loop of span `<= window`.
 *
 * # Safety
 * `walk` must be NULL or a live walk handle; `out_mask` must be NULL or
 * point to `lerw_walk_num_points(walk)` writable `bool`.
 */
enum LerwStatus lerw_loop_free_mask(const struct LerwWalk *walk, uint64_t window, bool *out_mask);

/**
 * Indicator that `[j, k]` contains no loop-free index.
 *
 * # Safety
 * `mask` must be NULL or point to `len` readable `bool`; `out` must be NULL
 * or point to a writable `bool`.
 */
enum LerwStatus lerw_z_indicator(const bool *mask, uint64_t len, uint64_t j, uint64_t k, bool *out);

/**
 * Least-squares power-law fit `y ~ amplitude * x^(-exponent)` over all
 * `len` points; every coordinate must be strictly positive and `len >= 3`.
 * Any output pointer may be NULL to skip that value.
 *
 * # Safety
 * `xs` and `ys` must point to `len` readable `double`; non-NULL output
 * pointers must be writable.
 */
enum LerwStatus lerw_fit_power_law(const double *xs,
                                   const double *ys,
                                   uint64_t len,
                                   double *out_exponent,
                                   double *out_amplitude,
                                   double *out_stderr,
                                   double *out_r_squared);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LERW_H */
