/* Copyright 2026 The orbit-isom Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ORBIT_ISOM_H
#define ORBIT_ISOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum OrbitIsomStatus {
  ORBIT_ISOM_STATUS_OK = 0,
  // A required pointer argument was null.
  ORBIT_ISOM_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  ORBIT_ISOM_STATUS_INVALID_UTF8 = 2,
  // Invalid input: malformed document, non-orthogonal generator,
  // dimension mismatch, unknown catalog id, ...
  ORBIT_ISOM_STATUS_INVALID_INPUT = 3,
  // A numerical decision landed inside a guard band.
  ORBIT_ISOM_STATUS_AMBIGUOUS = 4,
  // A Rust panic was caught at the boundary.
  ORBIT_ISOM_STATUS_PANIC = 5,
} OrbitIsomStatus;

// Group action prepared for quotient-distance queries.
typedef struct OrbitIsomContext OrbitIsomContext;

// Completed analysis report.
typedef struct OrbitIsomReport OrbitIsomReport;

// Validated representation.
typedef struct OrbitIsomSpec OrbitIsomSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *orbit_isom_last_error(void);

// Library version, a static NUL-terminated string.
const char *orbit_isom_version(void);

// Parse a representation document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_spec_from_json(const char *json, struct OrbitIsomSpec **out);

// Representation of a catalog action, e.g. `"hopf-u1-r4"`.
//
// # Safety
// `id` must be a NUL-terminated string and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_spec_from_catalog(const char *id, struct OrbitIsomSpec **out);

// # Safety
// `spec` must be null or a handle from this library, not yet freed.
void orbit_isom_spec_free(struct OrbitIsomSpec *spec);

// # Safety
// `spec` must be a live handle.
enum OrbitIsomStatus orbit_isom_spec_set_seed(struct OrbitIsomSpec *spec, uint64_t seed);

// # Safety
// `spec` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_spec_dimension(const struct OrbitIsomSpec *spec, size_t *out);

// Run the full pipeline.
//
// # Safety
// `spec` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_analyze(const struct OrbitIsomSpec *spec,
                                        struct OrbitIsomReport **out);

// # Safety
// `report` must be null or a live handle.
void orbit_isom_report_free(struct OrbitIsomReport *report);

// Report as a JSON string; release with [`orbit_isom_string_free`].
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_report_json(const struct OrbitIsomReport *report, char **out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_report_rank(const struct OrbitIsomReport *report, size_t *out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_report_boundary(const struct OrbitIsomReport *report, bool *out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void orbit_isom_string_free(char *s);

// Prepare quotient-distance queries (enumerates a finite group once).
//
// # Safety
// `spec` must be a live handle and `out` a valid pointer.
enum OrbitIsomStatus orbit_isom_context_new(const struct OrbitIsomSpec *spec,
                                            struct OrbitIsomContext **out);

// # Safety
// `context` must be null or a live handle.
void orbit_isom_context_free(struct OrbitIsomContext *context);

// Distance in `V/G` between the orbits of `a` and `b`, each of length `len`.
//
// # Safety
// `a` and `b` must point to `len` doubles; `out` must be valid.
enum OrbitIsomStatus orbit_isom_quotient_distance(const struct OrbitIsomContext *context,
                                                  const double *a,
                                                  const double *b,
                                                  size_t len,
                                                  double *out);

// Lift a rotation (row-major `3 x 3`) of the Hopf quotient sphere to a
// `U(1)`-equivariant isometry of `R^4` (row-major `4 x 4` into `lift_out`).
// `residual_out` may be null.
//
// # Safety
// `rotation` must point to 9 doubles and `lift_out` to 16 writable doubles.
enum OrbitIsomStatus orbit_isom_hopf_lift(const double *rotation,
                                          double *lift_out,
                                          double *residual_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBIT_ISOM_H */
