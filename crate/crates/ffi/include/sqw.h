/* Generated by cbindgen from src/lib.rs. Do not edit. */

#ifndef SQW_H
#define SQW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define SQW_AXIS_H1 1

#define SQW_AXIS_H2 2

#define SQW_AXIS_H3 3

typedef enum SqwStatus {
  SQW_STATUS_OK = 0,
  SQW_STATUS_NULL_POINTER = 1,
  SQW_STATUS_INVALID_ARGUMENT = 2,
  SQW_STATUS_NON_FINITE = 3,
  SQW_STATUS_NOT_HERMITIAN = 4,
  SQW_STATUS_TRACE_NOT_ONE = 5,
  SQW_STATUS_NOT_PSD = 6,
  SQW_STATUS_OUTSIDE_VALIDITY_WINDOW = 7,
  SQW_STATUS_NORMALIZATION_VIOLATED = 8,
  SQW_STATUS_PRECONDITION_VIOLATED = 9,
  SQW_STATUS_PANIC = 10,
} SqwStatus;

/**
 * A validated S3-world state.
 */
typedef struct SqwState SqwState;

typedef struct SqwCoeffs {
  double a;
  double b;
  double c;
  double d;
} SqwCoeffs;

/**
 * Entanglement gain at one pure state. `t` is ±infinity for the point at
 * infinity.
 */
typedef struct SqwGain {
  double t;
  double delta_c;
  double c_before;
  double c_after;
} SqwGain;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sqw_version(void);

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *sqw_last_error_message(void);

/**
 * Creates the state `a/2 + b·H1 + c·H2 + d·H3`.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum SqwStatus sqw_state_new(double a, double b, double c, double d, struct SqwState **out);

/**
 * Creates the pure state with parameter `t`; pass ±INFINITY for the point at
 * infinity.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum SqwStatus sqw_state_from_t(double t, struct SqwState **out);

/**
 * Creates the irreducible entangled state.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum SqwStatus sqw_state_ie(struct SqwState **out);

/**
 * Releases a state. NULL is ignored.
 *
 * # Safety
 * `state` must be NULL or a handle from this library not yet freed.
 */
void sqw_state_free(struct SqwState *state);

/**
 * # Safety
 * `state` must be a live handle; `out` must be NULL or writable.
 */
enum SqwStatus sqw_state_coeffs(const struct SqwState *state, struct SqwCoeffs *out);

/**
 * Writes the four eigenvalues in ascending order.
 *
 * # Safety
 * `state` must be a live handle; `out` must be NULL or point to four doubles.
 */
enum SqwStatus sqw_state_eigenvalues(const struct SqwState *state, double *out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be NULL or writable.
 */
enum SqwStatus sqw_state_is_pure(const struct SqwState *state, bool *out);

/**
 * Closed-form concurrence; needs `a = 1`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be NULL or writable.
 */
enum SqwStatus sqw_state_concurrence_closed(const struct SqwState *state, double *out);

/**
 * Wootters concurrence computed from the density matrix.
 *
 * # Safety
 * `state` must be a live handle; `out` must be NULL or writable.
 */
enum SqwStatus sqw_state_concurrence_oracle(const struct SqwState *state, double *out);

/**
 * Non-selective measurement of `axis`; writes a new handle.
 *
 * # Safety
 * `state` must be a live handle; `out` must be NULL or valid for writing one
 * pointer.
 */
enum SqwStatus sqw_state_measure(const struct SqwState *state,
                                 uint32_t axis,
                                 struct SqwState **out);

/**
 * # Safety
 * `out` must be NULL or writable.
 */
enum SqwStatus sqw_gain(uint32_t axis, double t, struct SqwGain *out);

/**
 * # Safety
 * `out` must be NULL or writable.
 */
enum SqwStatus sqw_maximize_gain(uint32_t axis, struct SqwGain *out);

/**
 * Wootters concurrence of an arbitrary two-qubit density matrix given as
 * row-major real and imaginary parts, 16 entries each.
 *
 * # Safety
 * `re` and `im` must be NULL or point to 16 doubles; `out` must be NULL or
 * writable.
 */
enum SqwStatus sqw_concurrence_oracle(const double *re, const double *im, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQW_H */
