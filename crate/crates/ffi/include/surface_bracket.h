#ifndef SURFACE_BRACKET_H
#define SURFACE_BRACKET_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_CHECK_FAILED = 1,
  SB_STATUS_INVALID_INPUT = 2,
  SB_STATUS_GUARD_EXCEEDED = 3,
  SB_STATUS_NULL_POINTER = 4,
  SB_STATUS_INTERNAL = 5,
} SbStatus;

/**
 * A parsed diagram together with its surface and homology data.
 */
typedef struct SbDiagram SbDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a diagram from nul-terminated UTF-8 JSON.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` a valid pointer.
 * On success `*out` owns a handle to release with `sb_diagram_free`.
 */
enum SbStatus sb_diagram_from_json(const char *json, struct SbDiagram **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `d` must be null or a handle from `sb_diagram_from_json` not yet freed.
 */
void sb_diagram_free(struct SbDiagram *d);

/**
 * Writes the genus of the surface to `*out`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SbStatus sb_diagram_genus(const struct SbDiagram *d, size_t *out);

/**
 * Writes the crossing count to `*out`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SbStatus sb_diagram_crossings(const struct SbDiagram *d, size_t *out);

/**
 * Computes the bracket polynomial in its text form.
 * `workers == 0` uses every core; `max_crossings == 0` keeps the default guard.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer. On success `*out`
 * must be released with `sb_string_free`.
 */
enum SbStatus sb_bracket(const struct SbDiagram *d,
                         size_t workers,
                         size_t max_crossings,
                         char **out);

/**
 * Runs the full analysis and returns the JSON report. Returns
 * `CheckFailed` with the report still written when an applicable check fails.
 *
 * # Safety
 * Same contract as `sb_bracket`.
 */
enum SbStatus sb_report_json(const struct SbDiagram *d,
                             size_t workers,
                             size_t max_crossings,
                             char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void sb_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *sb_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURFACE_BRACKET_H */
