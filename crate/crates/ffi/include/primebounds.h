#ifndef PRIMEBOUNDS_H
#define PRIMEBOUNDS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum PbStatus {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_DOMAIN = 2,
  PB_STATUS_PARSE = 3,
  PB_STATUS_INVALID_DATA = 4,
  PB_STATUS_INFEASIBLE = 5,
  PB_STATUS_RANGE = 6,
  PB_STATUS_RESOURCE = 7,
  PB_STATUS_IO = 8,
  PB_STATUS_UTF8 = 9,
  PB_STATUS_PANIC = 10,
} PbStatus;

/**
 * Step functions for [`pb_sieve_eval`] and the [`pb_verify`] mask.
 */
typedef enum PbStepKind {
  PB_STEP_KIND_PSI = 1,
  PB_STEP_KIND_THETA = 2,
  PB_STEP_KIND_PI = 4,
  PB_STEP_KIND_PI_STAR = 8,
} PbStepKind;

/**
 * Opaque prime-power sieve.
 */
typedef struct PbSieve PbSieve;

/**
 * Opaque zero-ordinate table.
 */
typedef struct PbZeroTable PbZeroTable;

/**
 * Result of a Chebyshev-type bound: |ψ(x) − x| ≤ delta0·x for x ≥ valid_from.
 */
typedef struct PbCertificate {
  double log_x0;
  double c;
  double eps;
  double alpha;
  double t;
  double e1;
  double e2;
  double e3;
  double shift;
  double delta0;
  double log_valid_from;
  /**
   * RH must hold up to this height.
   */
  double rh_height_required;
  double zero_data_height_used;
  double tail_bound_used;
} PbCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *pb_last_error_message(void);

/**
 * Loads a zero table (text or binary) from `path`.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum PbStatus pb_zero_table_load(const char *path, struct PbZeroTable **out);

/**
 * Builds a table from `len` ascending ordinates, complete up to `height`.
 *
 * # Safety
 * `ordinates` must point to `len` readable doubles; `out` must be writable.
 */
enum PbStatus pb_zero_table_from_ordinates(const double *ordinates,
                                           size_t len,
                                           double height,
                                           struct PbZeroTable **out);

/**
 * # Safety
 * `table` must come from this library and not be used afterwards; null is ignored.
 */
void pb_zero_table_free(struct PbZeroTable *table);

/**
 * # Safety
 * `table` must be a live handle; out-pointers must be writable.
 */
enum PbStatus pb_zero_table_info(const struct PbZeroTable *table, size_t *count, double *height);

/**
 * Sieves prime powers up to `limit`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_sieve_new(uint64_t limit, struct PbSieve **out);

/**
 * # Safety
 * `sieve` must come from this library and not be used afterwards; null is ignored.
 */
void pb_sieve_free(struct PbSieve *sieve);

/**
 * Value of ψ, θ, π or π* at x (half the jump at a prime power).
 *
 * # Safety
 * `sieve` must be a live handle; `out` must be writable.
 */
enum PbStatus pb_sieve_eval(const struct PbSieve *sieve,
                            enum PbStepKind kind,
                            double x,
                            double *out);

/**
 * Scans [lo, hi] for violations of the Schoenfeld-type inequalities of the
 * functions in `which_mask` (an OR of [`PbStepKind`] values), including the
 * strong and auxiliary forms.
 *
 * # Safety
 * `sieve` must be a live handle; `violations` must be writable.
 */
enum PbStatus pb_verify(const struct PbSieve *sieve,
                        double lo,
                        double hi,
                        uint32_t which_mask,
                        size_t *violations);

/**
 * Largest x with 4.92·√(x/log x) ≤ t.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_schoenfeld_threshold(double t, double *out);

/**
 * li(x) for x > 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_log_integral(double x, double *out);

/**
 * The Logan kernel ℓ_{c,ε}(ξ).
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_logan_ell(double c, double eps, double xi, double *out);

/**
 * Bound for fixed (c, α) with ε = c/t, valid from e^{log_valid_from}.
 * `table` may be null, in which case the whole zero sum is bounded analytically.
 *
 * # Safety
 * `table` must be null or a live handle; `out` must be writable.
 */
enum PbStatus pb_chebyshev_delta0(const struct PbZeroTable *table,
                                  double log_valid_from,
                                  double c,
                                  double alpha,
                                  double t,
                                  struct PbCertificate *out);

/**
 * Best certified bound over the default (c, α) grid.
 *
 * # Safety
 * `table` must be null or a live handle; `out` must be writable.
 */
enum PbStatus pb_optimize(const struct PbZeroTable *table,
                          double log_valid_from,
                          double t,
                          struct PbCertificate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRIMEBOUNDS_H */
