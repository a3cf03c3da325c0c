#ifndef FFCURVES_H
#define FFCURVES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FfcStatus {
  FFC_STATUS_OK = 0,
  FFC_STATUS_NULL_POINTER = 1,
  FFC_STATUS_INVALID_UTF8 = 2,
  FFC_STATUS_PARSE = 3,
  FFC_STATUS_SINGULAR = 4,
  FFC_STATUS_PRECONDITION = 5,
  FFC_STATUS_INSUFFICIENT_PRECISION = 6,
  FFC_STATUS_RESOURCE_CAP = 7,
  FFC_STATUS_PANIC = 8,
} FfcStatus;

/**
 * Opaque handle to a parsed, nonsingular curve.
 */
typedef struct FfcCurve FfcCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ffc_version(void);

/**
 * Last error message on this thread, or NULL. Valid until the next call.
 */
const char *ffc_last_error(void);

/**
 * Parse a curve spec such as `p=5 s=1; a=(1); b=(T)`.
 *
 * # Safety
 * `spec` must be NUL-terminated; `out` must be writable.
 */
enum FfcStatus ffc_curve_new(const char *spec, struct FfcCurve **out);

/**
 * # Safety
 * `curve` must come from [`ffc_curve_new`] and not be freed twice. NULL is ignored.
 */
void ffc_curve_free(struct FfcCurve *curve);

/**
 * The `analyze` report of one curve as JSON.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum FfcStatus ffc_curve_analyze_json(const struct FfcCurve *curve, char **out);

/**
 * `h_F(E)` and `h_{F,g}(E)` as reduced fractions.
 *
 * # Safety
 * `curve` must be a live handle; all out-pointers must be writable.
 */
enum FfcStatus ffc_curve_heights(const struct FfcCurve *curve,
                                 int64_t *hf_num,
                                 int64_t *hf_den,
                                 int64_t *hfg_num,
                                 int64_t *hfg_den);

/**
 * `deg 𝔫_E`.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum FfcStatus ffc_curve_conductor_degree(const struct FfcCurve *curve, int64_t *out);

/**
 * `a_𝔭` and `#k_𝔭` at a good place given as `inf` or a monic irreducible polynomial.
 *
 * # Safety
 * `curve` must be a live handle; `place` NUL-terminated; out-pointers writable.
 */
enum FfcStatus ffc_curve_frobenius_trace(const struct FfcCurve *curve,
                                         const char *place,
                                         int64_t *trace,
                                         uint64_t *norm);

/**
 * The first `n` coefficients of `j(q)` (from `q⁻¹`) as a JSON array of decimal strings.
 *
 * # Safety
 * `out` must be writable.
 */
enum FfcStatus ffc_tate_j_coefficients(size_t n, char **out);

/**
 * `|Γ_n|` for `H_n = ⟨r⟩ ⊆ (Z/n)^×`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FfcStatus ffc_gamma_order(uint64_t r, uint64_t n, uint64_t *out);

/**
 * Run a command line given as a JSON array of arguments (without program
 * name) and return the JSON report.
 *
 * # Safety
 * `args_json` must be NUL-terminated; `out` must be writable.
 */
enum FfcStatus ffc_run_json(const char *args_json, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. NULL is ignored.
 */
void ffc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFCURVES_H */
