#ifndef LEFKIT_H
#define LEFKIT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LefStatus {
  LEF_STATUS_OK = 0,
  LEF_STATUS_INVALID_INPUT = 1,
  LEF_STATUS_RESOURCE_LIMIT = 2,
  LEF_STATUS_NOT_ENUMERABLE = 3,
  /**
   * The search stopped on its budget; the result in `out` is still set.
   */
  LEF_STATUS_BUDGET_EXCEEDED = 4,
  LEF_STATUS_NULL_POINTER = 5,
  LEF_STATUS_PANIC = 6,
} LefStatus;

typedef struct LefGroup LefGroup;

typedef struct LefPresentation LefPresentation;

typedef struct LefTable LefTable;

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next lefkit call on the same thread.
 */
const char *lef_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lef_string_free(char *s);

/**
 * Parse a backend spec such as `{"kind":"cyclic","m":8}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LefStatus lef_group_from_json(const char *json, struct LefGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void lef_group_free(struct LefGroup *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LefStatus lef_group_order(const struct LefGroup *g, uint64_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LefStatus lef_group_to_json(const struct LefGroup *g, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LefStatus lef_table_from_json(const char *json, struct LefTable **out);

/**
 * Partial multiplication table of a JSON array of elements of `g`.
 *
 * # Safety
 * `g` must be a live handle, `subset` a NUL-terminated string, `out` writable.
 */
enum LefStatus lef_table_extract(const struct LefGroup *g,
                                 const char *subset,
                                 struct LefTable **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void lef_table_free(struct LefTable *t);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum LefStatus lef_table_size(const struct LefTable *t, size_t *out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum LefStatus lef_table_to_json(const struct LefTable *t, char **out);

/**
 * Sweep `family` (`"cyclic"` or `"symmetric"`) for a local embedding of `t`.
 * `budget` is JSON with any of `max_cyclic_m`, `max_symmetric_n`,
 * `node_limit`, `time_limit_ms`, or null for the defaults. `out` receives
 * either a witness or an exhaustion certificate.
 *
 * # Safety
 * `t` must be a live handle, `family` a NUL-terminated string, `budget`
 * null or a NUL-terminated string, `out` writable.
 */
enum LefStatus lef_search_family(const struct LefTable *t,
                                 const char *family,
                                 const char *budget,
                                 char **out);

/**
 * Search a single finite target.
 *
 * # Safety
 * `t` and `g` must be live handles, `budget` null or a NUL-terminated
 * string, `out` writable.
 */
enum LefStatus lef_search_target(const struct LefTable *t,
                                 const struct LefGroup *g,
                                 const char *budget,
                                 char **out);

/**
 * Check an assignment `{"target": spec, "images": [...]}` against `t`.
 * `out` receives 1 for a local embedding and 0 otherwise.
 *
 * # Safety
 * `t` must be a live handle, `assignment` a NUL-terminated string, `out` writable.
 */
enum LefStatus lef_verify_assignment(const struct LefTable *t,
                                     const char *assignment,
                                     int32_t *out);

/**
 * Closed-form witness for a JSON array of elements of an abelian backend.
 *
 * # Safety
 * `g` must be a live handle, `subset` a NUL-terminated string, `out` writable.
 */
enum LefStatus lef_abelian_witness(const struct LefGroup *g, const char *subset, char **out);

/**
 * Number of reduced words of length at most `radius` in the free group of `rank`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LefStatus lef_ball_size(size_t rank, size_t radius, uint64_t *out);

/**
 * Parse `{"rank": r, "relators": ["x0^2", ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LefStatus lef_presentation_from_json(const char *json, struct LefPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void lef_presentation_free(struct LefPresentation *p);

/**
 * Search cyclic then symmetric quotients, minimising collisions on the
 * ball of `radius`.
 *
 * # Safety
 * `p` must be a live handle, `budget` null or a NUL-terminated string,
 * `out` writable.
 */
enum LefStatus lef_quotient_search(const struct LefPresentation *p,
                                   size_t radius,
                                   const char *budget,
                                   char **out);

#endif  /* LEFKIT_H */
