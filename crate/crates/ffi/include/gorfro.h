#ifndef GORFRO_H
#define GORFRO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GorfroStatus {
  GORFRO_STATUS_OK = 0,
  GORFRO_STATUS_NULL_POINTER = 1,
  GORFRO_STATUS_INVALID_UTF8 = 2,
  GORFRO_STATUS_PARSE = 3,
  GORFRO_STATUS_RESOURCE = 4,
  GORFRO_STATUS_INVALID_INPUT = 5,
  GORFRO_STATUS_INTERNAL = 6,
  GORFRO_STATUS_PANIC = 7,
} GorfroStatus;

/**
 * Analysis report for one ring. Opaque to C.
 */
typedef struct GorfroReport GorfroReport;

/**
 * Scalar invariants of a report. Booleans are written as 0 or 1.
 */
typedef struct GorfroSummary {
  size_t nvars;
  size_t dim;
  size_t codim;
  size_t pd;
  size_t cm_type;
  size_t regularity;
  size_t socle_degree;
  uint8_t cohen_macaulay;
  uint8_t gorenstein;
  uint8_t frobenius;
  uint8_t subcanonical;
  /**
   * Twist `N` with `K_X = O_X(-N)`, 0 when not subcanonical.
   */
  uint64_t subcanonical_n;
  /**
   * 1 when some theorem assertion failed on this ring.
   */
  uint8_t failed;
  /**
   * Number of nonzero Betti entries.
   */
  size_t betti_len;
} GorfroSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-OK status on this thread, or an empty string.
 * The pointer stays valid until the next gorfro call on the same thread.
 */
const char *gorfro_last_error(void);

/**
 * Analyzes a built-in catalog entry. `field` may be null (entry default),
 * `"q"`, `"p"` or `"p:<prime>"`; `max_seconds` of 0 means no limit.
 *
 * # Safety
 * `id` and a non-null `field` must be NUL-terminated strings; `out` must be
 * writable.
 */
enum GorfroStatus gorfro_check_example(const char *id,
                                       const char *field,
                                       uint64_t max_seconds,
                                       struct GorfroReport **out);

/**
 * Analyzes an ideal given in the text format accepted by `gorfro check
 * --ideal` (a `ring n=<count>` line, then one generator per line).
 *
 * # Safety
 * As for [`gorfro_check_example`].
 */
enum GorfroStatus gorfro_check_ideal_text(const char *text,
                                          const char *field,
                                          uint64_t max_seconds,
                                          struct GorfroReport **out);

/**
 * # Safety
 * `report` must come from this library and not be used afterwards.
 */
void gorfro_report_free(struct GorfroReport *report);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void gorfro_string_free(char *s);

/**
 * Full report as pretty-printed JSON; free with [`gorfro_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum GorfroStatus gorfro_report_json(const struct GorfroReport *report, char **out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum GorfroStatus gorfro_report_summary(const struct GorfroReport *report,
                                        struct GorfroSummary *out);

/**
 * The `k`-th nonzero Betti entry `β_{p,q}`, sorted by `(p, q)`.
 *
 * # Safety
 * `report` must be a live handle; output pointers must be writable.
 */
enum GorfroStatus gorfro_report_betti(const struct GorfroReport *report,
                                      size_t k,
                                      size_t *p,
                                      size_t *q,
                                      size_t *beta);

/**
 * Root-theoretic subcanonicity of the orbit of `λ = Σ weight[i] ω_i` in
 * type `root_type` (e.g. `"A3"`, `"A1xA2"`). Writes 1 to `holds` and the
 * twist to `n` when subcanonical, otherwise 0 and 0.
 *
 * # Safety
 * `root_type` must be NUL-terminated; `weight` must point to `len` values.
 */
enum GorfroStatus gorfro_subcanonical(const char *root_type,
                                      const int64_t *weight,
                                      size_t len,
                                      uint8_t *holds,
                                      uint64_t *n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GORFRO_H */
