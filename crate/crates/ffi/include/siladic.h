#ifndef SILADIC_H
#define SILADIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SiladicFormat {
  SILADIC_FORMAT_JSON = 0,
  SILADIC_FORMAT_CSV = 1,
  SILADIC_FORMAT_TEXT = 2,
} SiladicFormat;

typedef enum SiladicFormulation {
  /**
   * Conditions on the sum of consecutive parts mod 16.
   */
  SILADIC_FORMULATION_ORIGINAL = 0,
  /**
   * Conditions on the larger part mod 8.
   */
  SILADIC_FORMULATION_REFORMULATED = 1,
} SiladicFormulation;

typedef enum SiladicStatus {
  SILADIC_STATUS_OK = 0,
  /**
   * The suite ran and at least one check failed.
   */
  SILADIC_STATUS_CHECK_FAILED = 1,
  SILADIC_STATUS_NULL_POINTER = 2,
  SILADIC_STATUS_INVALID_ARGUMENT = 3,
  SILADIC_STATUS_OVERFLOW = 4,
  SILADIC_STATUS_BOUND_EXCEEDED = 5,
  SILADIC_STATUS_OUT_OF_WINDOW = 6,
  SILADIC_STATUS_INTERNAL = 7,
} SiladicStatus;

/**
 * `a_N` tables for every `N <= n_max` plus the distinct-odd table.
 */
typedef struct SiladicCounts SiladicCounts;

/**
 * A truncated series in `t` and `q`.
 */
typedef struct SiladicSeries SiladicSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *siladic_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *siladic_last_error(void);

/**
 * Releases a string returned through an `out` pointer.
 *
 * # Safety
 * `s` must be NULL or a pointer produced by this library and not yet freed.
 */
void siladic_string_free(char *s);

/**
 * Builds every count table on the window `k <= k_max`, `n <= n_max`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SiladicStatus siladic_counts_new(size_t k_max, size_t n_max, struct SiladicCounts **out);

/**
 * # Safety
 * `h` must be NULL or a handle from [`siladic_counts_new`] not yet freed.
 */
void siladic_counts_free(struct SiladicCounts *h);

/**
 * `a_N(k, n)`: admissible partitions with largest part at most `bound`.
 * Negative `k` or `n` give 0.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_counts_at_most(const struct SiladicCounts *h,
                                          int64_t bound,
                                          int64_t k,
                                          int64_t n,
                                          int64_t *out);

/**
 * `e_N(k, n)`: admissible partitions with largest part exactly `bound`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_counts_exactly(const struct SiladicCounts *h,
                                          int64_t bound,
                                          int64_t k,
                                          int64_t n,
                                          int64_t *out);

/**
 * `A(k, n)`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_counts_admissible(const struct SiladicCounts *h,
                                             int64_t k,
                                             int64_t n,
                                             uint64_t *out);

/**
 * `B(k, n)`: partitions of `n` into `k` distinct odd parts.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_counts_distinct_odd(const struct SiladicCounts *h,
                                               int64_t k,
                                               int64_t n,
                                               uint64_t *out);

/**
 * `G_M` read off the `a_M` table of `h`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_series_from_counts(const struct SiladicCounts *h,
                                              int64_t m,
                                              struct SiladicSeries **out);

/**
 * `G_M` rebuilt from the initial conditions and the q-difference equations.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SiladicStatus siladic_series_recurrence(int64_t m,
                                             size_t k_max,
                                             size_t n_max,
                                             struct SiladicSeries **out);

/**
 * The product of `(1 + t q^(2j+1))` over `j >= 0`, truncated.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SiladicStatus siladic_series_distinct_odd(size_t k_max,
                                               size_t n_max,
                                               struct SiladicSeries **out);

/**
 * Coefficient of `t^k q^n`; 0 outside the window.
 *
 * # Safety
 * `s` must be a live series handle and `out` a valid pointer.
 */
enum SiladicStatus siladic_series_coeff(const struct SiladicSeries *s,
                                        int64_t k,
                                        int64_t n,
                                        int64_t *out);

/**
 * Compares two series on their common window. When they differ, `k_out`
 * and `n_out` receive the first differing cell in `(n, k)` order.
 *
 * # Safety
 * `a` and `b` must be live series handles; the out pointers must be valid.
 */
enum SiladicStatus siladic_series_equal(const struct SiladicSeries *a,
                                        const struct SiladicSeries *b,
                                        bool *equal_out,
                                        int64_t *k_out,
                                        int64_t *n_out);

/**
 * # Safety
 * `s` must be NULL or a series handle not yet freed.
 */
void siladic_series_free(struct SiladicSeries *s);

/**
 * Whether a larger part `part` may sit `gap` above the next part (gap 5..=8).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SiladicStatus siladic_gap_rule_allows(uint32_t gap, uint32_t part, bool *out);

/**
 * Whether the non-increasing sequence `parts[0..len]` is admissible.
 *
 * # Safety
 * `parts` must point to `len` readable values (it may be NULL when `len` is 0)
 * and `out` must be valid.
 */
enum SiladicStatus siladic_partition_admissible(const uint32_t *parts,
                                                size_t len,
                                                enum SiladicFormulation formulation,
                                                bool *out);

/**
 * Odd parts plus twice the even parts.
 *
 * # Safety
 * As for [`siladic_partition_admissible`].
 */
enum SiladicStatus siladic_partition_statistic(const uint32_t *parts, size_t len, uint64_t *out);

/**
 * Runs the suite and writes the serialized report to `*out`.
 *
 * `checks` is a comma-separated list of check names, or NULL for all.
 * Returns `SILADIC_STATUS_CHECK_FAILED` when the report contains failures;
 * `*out` is set in that case too.
 *
 * # Safety
 * `checks` must be NULL or a NUL-terminated string; `out` must be valid.
 */
enum SiladicStatus siladic_verify(size_t n_max,
                                  size_t k_max,
                                  uint32_t oracle_n_max,
                                  const char *checks,
                                  enum SiladicFormat format,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILADIC_H */
