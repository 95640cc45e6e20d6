/* C interface for the relloc localisation library. */

#ifndef RELLOC_H
#define RELLOC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a C API call. Anything other than `Ok` leaves a message in
// [`relloc_last_error`].
typedef enum RellocStatus {
  // The call succeeded.
  RELLOC_STATUS_OK = 0,
  // A required pointer argument was null.
  RELLOC_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  RELLOC_STATUS_INVALID_UTF8 = 2,
  // The state JSON could not be parsed or failed validation.
  RELLOC_STATUS_INVALID_STATE = 3,
  // An observable expression could not be parsed.
  RELLOC_STATUS_PARSE_ERROR = 4,
  // An observable expression could not be evaluated.
  RELLOC_STATUS_EVAL_ERROR = 5,
  // A geometric operation was outside its domain.
  RELLOC_STATUS_DOMAIN_ERROR = 6,
  // The verification suite name is not recognised.
  RELLOC_STATUS_UNKNOWN_SUITE = 7,
} RellocStatus;

// Opaque handle to a validated system + state pair.
typedef struct RellocState RellocState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on the calling thread, or null
// if no call has failed. The pointer stays valid until the next failing call
// on the same thread.
const char *relloc_last_error(void);

// Library version as a static NUL-terminated string.
const char *relloc_version(void);

// Parses and validates a state document and returns a new handle through
// `out`. The document is the same JSON the CLI accepts:
// `{"m": .., "S": .., "c": .., "x": [..], "p": [..], "s_hat": [..]}`.
//
// On success the caller owns the handle and must release it with
// [`relloc_state_free`].
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum RellocStatus relloc_state_from_json(const char *json, struct RellocState **out);

// Releases a handle created by [`relloc_state_from_json`]. Null is ignored.
//
// # Safety
// `handle` must be null or a pointer previously returned by
// [`relloc_state_from_json`] that has not already been freed.
void relloc_state_free(struct RellocState *handle);

// Evaluates an observable expression at the handle's state and writes the
// value through `out`. Accepts the same grammar and aliases as the CLI
// (`x1..x3`, `p1..p3`, `s1..s3`, `m`, `S`, `c`, `P0..P3`, `J12`, `W0..W3`,
// `X1..X3`, ...).
//
// # Safety
// `handle` must be a live handle, `expr` a NUL-terminated string, `out` a
// valid pointer.
enum RellocStatus relloc_eval(const struct RellocState *handle, const char *expr, double *out);

// Evaluates the Poisson bracket `{f, g}` of two observable expressions at
// the handle's state.
//
// # Safety
// As for [`relloc_eval`]; both `f` and `g` must be NUL-terminated strings.
enum RellocStatus relloc_bracket(const struct RellocState *handle,
                                 const char *f,
                                 const char *g,
                                 double *out);

// Writes the three Newton-Wigner position coordinates of the state to
// `out[0..3]`.
//
// # Safety
// `handle` must be a live handle; `out` must point to at least 3 doubles.
enum RellocStatus relloc_nw_position(const struct RellocState *handle, double *out);

// Computes the disc of possible centre positions on the state's
// momentum-orthogonal hyperplane through the origin. Writes the disc radius
// through `radius` and, when the corresponding pointers are non-null, the
// centre and normal components to `centre[0..4]` and `normal[0..4]`.
//
// # Safety
// `handle` must be a live handle; `radius` must be a valid pointer;
// `centre`/`normal` must each be null or point to at least 4 doubles.
enum RellocStatus relloc_moller_disc(const struct RellocState *handle,
                                     double *radius,
                                     double *centre,
                                     double *normal);

// Runs a verification suite (or `"all"`) with the given seed and sample
// count and writes `true` through `passed` when every check succeeded.
// A completed run reports `Ok` even when checks fail; inspect `passed`.
//
// # Safety
// `suite` must be a NUL-terminated string; `passed` must be a valid pointer.
enum RellocStatus relloc_verify(const char *suite, uint64_t seed, uintptr_t samples, bool *passed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RELLOC_H */
