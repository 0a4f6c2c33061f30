#ifndef PARTITION_SADDLE_H
#define PARTITION_SADDLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  PS_STATUS_ARGUMENT = 3,
  PS_STATUS_PARSE = 4,
  PS_STATUS_ADMISSIBILITY = 5,
  PS_STATUS_CAPABILITY = 6,
  PS_STATUS_DOMAIN = 7,
  PS_STATUS_POLE = 8,
  PS_STATUS_NUMERIC = 9,
  PS_STATUS_QUADRATURE = 10,
  PS_STATUS_FIT = 11,
  PS_STATUS_OUT_OF_RANGE = 12,
  PS_STATUS_PANIC = 13,
} PsStatus;

/**
 * Main-term constants at a fixed working precision.
 */
typedef struct PsAsymptotics PsAsymptotics;

/**
 * Exact counts `p(0), …, p(n_max)`.
 */
typedef struct PsCounts PsCounts;

/**
 * A parsed part set.
 */
typedef struct PsSpec PsSpec;

/**
 * Constants of `p(n) ∼ b e^{c n^{α/(α+1)}} n^{−h}`, rounded to `double`.
 */
typedef struct PsConstantValues {
  double alpha;
  double frak_a;
  double frak_b;
  double frak_c;
  double frak_h;
  double gamma10;
  /**
   * Meaningful only when `has_gamma01` is set.
   */
  double gamma01;
  bool has_gamma01;
} PsConstantValues;

/**
 * Saddle point of `−Φ′(ϱ) = n`.
 */
typedef struct PsSaddle {
  double rho;
  /**
   * `Φ″(ϱ)`.
   */
  double phi2;
  /**
   * `Φ(ϱ) = log F(ϱ)`.
   */
  double log_f;
  /**
   * `|Φ′(ϱ) + n|`.
   */
  double residual;
} PsSaddle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *ps_last_error(void);

/**
 * Library version as a static string.
 */
const char *ps_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ps_string_free(char *s);

/**
 * Parses a part-set description such as `classical`, `powers(2)` or `ap(3,4,1)`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum PsStatus ps_spec_parse(const char *text, struct PsSpec **out);

/**
 * # Safety
 * `spec` must come from [`ps_spec_parse`] and not have been freed. Null is ignored.
 */
void ps_spec_free(struct PsSpec *spec);

/**
 * Canonical text of a part set; release with [`ps_string_free`].
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_spec_canonical(const struct PsSpec *spec, char **out);

/**
 * Exact counts up to `n_max`, by the pentagonal recurrence for the classical set.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_exact_counts(const struct PsSpec *spec, int64_t n_max, struct PsCounts **out);

/**
 * # Safety
 * `counts` must come from [`ps_exact_counts`] and not have been freed. Null is ignored.
 */
void ps_counts_free(struct PsCounts *counts);

/**
 * Largest `n` held by the table.
 *
 * # Safety
 * `counts` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_counts_n_max(const struct PsCounts *counts, size_t *out);

/**
 * `p(n)` in decimal; release with [`ps_string_free`].
 *
 * # Safety
 * `counts` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_counts_get(const struct PsCounts *counts, size_t n, char **out);

/**
 * `log p(n)`, `-inf` when the count is zero.
 *
 * # Safety
 * `counts` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_counts_log(const struct PsCounts *counts, size_t n, double *out);

/**
 * Main-term constants at `digits` decimal digits; `0` selects the default precision.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_asymptotics_new(const struct PsSpec *spec,
                                 uint32_t digits,
                                 struct PsAsymptotics **out);

/**
 * # Safety
 * `handle` must come from [`ps_asymptotics_new`] and not have been freed. Null is ignored.
 */
void ps_asymptotics_free(struct PsAsymptotics *handle);

/**
 * # Safety
 * `handle` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_asymptotics_values(const struct PsAsymptotics *handle,
                                    struct PsConstantValues *out);

/**
 * `log` of the asymptotic estimate of `p(n)` with correction order 0 or 1.
 *
 * `degraded` may be null; otherwise it is set when order 1 lacked `γ₀₁`.
 *
 * # Safety
 * `handle` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_estimate_log(const struct PsAsymptotics *handle,
                              uint64_t n,
                              uint8_t order,
                              double *out,
                              bool *degraded);

/**
 * Solves `−Φ′(ϱ) = n`.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_solve_saddle(const struct PsSpec *spec, uint64_t n, struct PsSaddle *out);

/**
 * `log p(n)` from the saddle-point series with `k ≤ 2` correction orders.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_saddle_estimate_log(const struct PsSpec *spec,
                                     uint64_t n,
                                     uint32_t k,
                                     double *out);

/**
 * `log p(n)` by Cauchy's integral; `quad_points = 0` selects the default grid.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_cauchy_log_count(const struct PsSpec *spec,
                                  uint64_t n,
                                  size_t quad_points,
                                  double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PARTITION_SADDLE_H */
