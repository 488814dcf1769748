#ifndef QKERNEL_H
#define QKERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of one identity check.
 */
typedef enum QkCheckStatus {
  QK_CHECK_STATUS_PASS = 0,
  QK_CHECK_STATUS_FAIL = 1,
  QK_CHECK_STATUS_SKIPPED = 2,
} QkCheckStatus;

/**
 * Result code of every call.
 */
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_INVALID_ARGUMENT = 2,
  QK_STATUS_DOMAIN = 3,
  QK_STATUS_POLE = 4,
  QK_STATUS_TRUNCATION = 5,
  QK_STATUS_QUADRATURE = 6,
  QK_STATUS_NON_FINITE = 7,
  QK_STATUS_UNKNOWN_IDENTITY = 8,
  QK_STATUS_UTF8 = 9,
  QK_STATUS_PANIC = 10,
} QkStatus;

/**
 * Opaque numerical settings.
 */
typedef struct QkConfig QkConfig;

/**
 * Opaque suite result.
 */
typedef struct QkSuite QkSuite;

typedef struct QkComplex {
  double re;
  double im;
} QkComplex;

/**
 * One row of a suite report. Errors are NaN when the check was skipped.
 */
typedef struct QkEntry {
  enum QkCheckStatus status;
  size_t draw;
  bool pinned;
  double rel_err;
  double abs_err;
  double threshold;
  struct QkComplex lhs;
  struct QkComplex rhs;
} QkEntry;

typedef struct QkSummary {
  size_t total;
  size_t pass;
  size_t fail;
  size_t skipped;
} QkSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qk_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *qk_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string returned by this library that hasn't been freed.
 */
void qk_string_free(char *s);

/**
 * (a; q)_n for n >= 0, or (a; q)_inf when n is negative.
 *
 * # Safety
 * `out` is NULL or valid for writes.
 */
enum QkStatus qk_poch(struct QkComplex a, struct QkComplex q, int64_t n, struct QkComplex *out);

/**
 * Basic hypergeometric series r phi s. A non-negative `terminate` sums
 * exactly terminate + 1 terms.
 *
 * # Safety
 * `num` and `den` point to `n_num` and `n_den` values (or are NULL when the count is 0); `out` is NULL or valid for writes.
 */
enum QkStatus qk_phi(const struct QkComplex *num,
                     size_t n_num,
                     const struct QkComplex *den,
                     size_t n_den,
                     struct QkComplex q,
                     struct QkComplex z,
                     int64_t terminate,
                     struct QkComplex *out);

struct QkConfig *qk_config_new(void);

/**
 * # Safety
 * `cfg` is NULL or a handle from qk_config_new that hasn't been freed.
 */
void qk_config_free(struct QkConfig *cfg);

/**
 * Replaces every registry threshold. A negative value clears the override.
 *
 * # Safety
 * `cfg` is NULL or a live handle.
 */
enum QkStatus qk_config_set_tolerance(struct QkConfig *cfg, double tol);

/**
 * Threshold for a single identity.
 *
 * # Safety
 * `cfg` is NULL or a live handle; `id` is NULL or a NUL-terminated string.
 */
enum QkStatus qk_config_set_threshold(struct QkConfig *cfg, const char *id, double tol);

/**
 * Number of registered identities.
 */
size_t qk_identity_count(void);

/**
 * Id of the i-th registered identity as a static string, or NULL past the end.
 */
const char *qk_identity_id(size_t i);

/**
 * Checks one identity. `names`/`values` give `len` parameters; the rest
 * take their registry defaults. `cfg` may be NULL.
 *
 * # Safety
 * `cfg` is NULL or a live handle; `id` is a NUL-terminated string; `names` and `values` hold `len` entries; `out` is valid for writes.
 */
enum QkStatus qk_check(const struct QkConfig *cfg,
                       const char *id,
                       const char *const *names,
                       const struct QkComplex *values,
                       size_t len,
                       struct QkEntry *out);

/**
 * Runs the suite over `n_ids` identities (all when `n_ids` is 0) and stores
 * a new handle in `out`. `cfg` may be NULL.
 *
 * # Safety
 * `cfg` is NULL or a live handle; `ids` holds `n_ids` NUL-terminated strings; `out` is valid for writes.
 */
enum QkStatus qk_suite_run(const struct QkConfig *cfg,
                           const char *const *ids,
                           size_t n_ids,
                           size_t draws,
                           uint64_t seed,
                           size_t jobs,
                           struct QkSuite **out);

/**
 * # Safety
 * `suite` is NULL or a handle from qk_suite_run that hasn't been freed.
 */
void qk_suite_free(struct QkSuite *suite);

/**
 * Number of rows in the report, or 0 for NULL.
 *
 * # Safety
 * `suite` is NULL or a live handle.
 */
size_t qk_suite_len(const struct QkSuite *suite);

/**
 * # Safety
 * `suite` is NULL or a live handle; `out` is valid for writes.
 */
enum QkStatus qk_suite_summary(const struct QkSuite *suite, struct QkSummary *out);

/**
 * # Safety
 * `suite` is NULL or a live handle; `out` is valid for writes.
 */
enum QkStatus qk_suite_entry(const struct QkSuite *suite, size_t i, struct QkEntry *out);

/**
 * Identity id of row `i`, owned by the handle. NULL when out of range.
 *
 * # Safety
 * `suite` is NULL or a live handle.
 */
const char *qk_suite_id(const struct QkSuite *suite, size_t i);

/**
 * Serializes the report as JSON. Free the result with qk_string_free.
 * `deterministic` leaves out the timestamp.
 *
 * # Safety
 * `suite` and `cfg` are NULL or live handles; `out` is valid for writes.
 */
enum QkStatus qk_suite_to_json(const struct QkSuite *suite,
                               const struct QkConfig *cfg,
                               bool deterministic,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QKERNEL_H */
