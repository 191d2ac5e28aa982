#ifndef TPSGEO_H
#define TPSGEO_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Per-claim status inside a report.
typedef enum TpsgeoClaimStatus {
  TPSGEO_CLAIM_STATUS_EXACT_PASS = 0,
  TPSGEO_CLAIM_STATUS_NUMERIC_PASS = 1,
  TPSGEO_CLAIM_STATUS_FAIL = 2,
  TPSGEO_CLAIM_STATUS_NOT_APPLICABLE = 3,
} TpsgeoClaimStatus;

// Which phase space a curvature or Killing suite runs on.
typedef enum TpsgeoSpace {
  TPSGEO_SPACE_TPS = 0,
  TPSGEO_SPACE_SYMPL = 1,
} TpsgeoSpace;

// Result code of every fallible entry point.
typedef enum TpsgeoStatus {
  TPSGEO_STATUS_OK = 0,
  // A required pointer argument was null.
  TPSGEO_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  TPSGEO_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON or an unknown catalog id.
  TPSGEO_STATUS_PARSE = 3,
  // An argument outside the supported range (n, degree, point length, ...).
  TPSGEO_STATUS_DOMAIN = 4,
  // A numerical evaluation left the domain of the potential.
  TPSGEO_STATUS_NUMERIC = 5,
  // The output buffer is too small; the required length has been written.
  TPSGEO_STATUS_BUFFER_TOO_SMALL = 6,
  // An internal panic was caught.
  TPSGEO_STATUS_INTERNAL = 7,
} TpsgeoStatus;

// A potential together with its partition and sign convention.
typedef struct TpsgeoModel TpsgeoModel;

// A finished verification report.
typedef struct TpsgeoReport TpsgeoReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string. Do not free.
const char *tpsgeo_version(void);

// Message of the last failure on this thread, empty after a success.
// Valid until the next call into the library from the same thread.
const char *tpsgeo_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void tpsgeo_string_free(char *s);

// Builds a model from a potential definition in JSON:
// `{name, convention, partition: {I, J}, parameters, model}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum TpsgeoStatus tpsgeo_model_from_json(const char *json, struct TpsgeoModel **out);

// Releases a model. Null is ignored.
//
// # Safety
// `m` must come from [`tpsgeo_model_from_json`] and must not be used afterwards.
void tpsgeo_model_free(struct TpsgeoModel *m);

// Number of potential variables, 0 for a null handle.
//
// # Safety
// `m` must be null or a live model.
uintptr_t tpsgeo_model_nvars(const struct TpsgeoModel *m);

// Writes the Hessian of the potential at `point` into `out` row-major.
// `out_len` must be at least nvars²; otherwise the call fails with
// `BufferTooSmall` and stores the required length in `*out_len`.
//
// # Safety
// `point` must hold `len` doubles, `out` must hold `*out_len` doubles.
enum TpsgeoStatus tpsgeo_model_hessian(const struct TpsgeoModel *m,
                                       const double *point,
                                       uintptr_t len,
                                       double *out,
                                       uintptr_t *out_len);

// Full analysis of the Legendre surface at one base point, as a JSON record
// `{point, ambient, metric, eigenvalues, classification, II_norm, ...}`.
//
// # Safety
// `point` must hold `len` doubles; `out_json` must be a valid pointer.
// Free the result with [`tpsgeo_string_free`].
enum TpsgeoStatus tpsgeo_model_analyze(const struct TpsgeoModel *m,
                                       const double *point,
                                       uintptr_t len,
                                       char **out_json);

// Runs the curvature suite (`curvature --space S --n N`).
//
// # Safety
// `out` must be a valid pointer.
enum TpsgeoStatus tpsgeo_curvature(enum TpsgeoSpace space, uintptr_t n, struct TpsgeoReport **out);

// Solves for polynomial Killing fields up to `degree` and stores the kernel
// dimension in `*dimension` when that pointer is non-null.
//
// # Safety
// `out` must be a valid pointer; `dimension` may be null.
enum TpsgeoStatus tpsgeo_killing(enum TpsgeoSpace space,
                                 uintptr_t n,
                                 uint32_t degree,
                                 uintptr_t *dimension,
                                 struct TpsgeoReport **out);

// Runs `verify-all`. `only` is null for every group or a comma separated
// list of group names.
//
// # Safety
// `only` must be null or NUL-terminated; `out` must be a valid pointer.
enum TpsgeoStatus tpsgeo_verify_all(uintptr_t n_max, const char *only, struct TpsgeoReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must come from this library and must not be used afterwards.
void tpsgeo_report_free(struct TpsgeoReport *r);

// 1 if no claim failed, 0 otherwise (also for null).
//
// # Safety
// `r` must be null or a live report.
int tpsgeo_report_all_pass(const struct TpsgeoReport *r);

// Number of claims, 0 for null.
//
// # Safety
// `r` must be null or a live report.
uintptr_t tpsgeo_report_len(const struct TpsgeoReport *r);

// Status of claim `i`.
//
// # Safety
// `r` must be a live report and `out` a valid pointer.
enum TpsgeoStatus tpsgeo_report_status(const struct TpsgeoReport *r,
                                       uintptr_t i,
                                       enum TpsgeoClaimStatus *out);

// Renders the report as JSON, or as a markdown table when `markdown` is
// nonzero. Free the result with [`tpsgeo_string_free`].
//
// # Safety
// `r` must be a live report and `out` a valid pointer.
enum TpsgeoStatus tpsgeo_report_render(const struct TpsgeoReport *r, int markdown, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPSGEO_H */
