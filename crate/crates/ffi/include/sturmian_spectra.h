#ifndef STURMIAN_SPECTRA_H
#define STURMIAN_SPECTRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_POINTER = 1,
  SS_STATUS_PARSE = 2,
  SS_STATUS_INVALID_ARGUMENT = 3,
  SS_STATUS_RESOURCE_CAP = 4,
  SS_STATUS_INTERNAL = 5,
  SS_STATUS_PANIC = 6,
} SsStatus;

/**
 * An eventually periodic continued fraction.
 */
typedef struct SsContinuedFraction SsContinuedFraction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ss_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ss_version(void);

/**
 * Parses text such as `"[0; 2, (1)]"` into a new handle.
 *
 * # Safety
 * `text` must be NULL or a valid NUL-terminated string; `out` must be NULL
 * or writable.
 */
enum SsStatus ss_cf_parse(const char *text, struct SsContinuedFraction **out);

/**
 * Releases a handle from [`ss_cf_parse`]. NULL is ignored.
 *
 * # Safety
 * `cf` must be NULL or a handle not yet freed.
 */
void ss_cf_free(struct SsContinuedFraction *cf);

/**
 * Canonical text form, e.g. `[0; 2, (1)]`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_cf_to_string(const struct SsContinuedFraction *cf, char **out);

/**
 * The value as `{"p","q","d","r","decimal"}`, meaning `(p + q sqrt d)/r`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_cf_value_json(const struct SsContinuedFraction *cf, char **out);

/**
 * The value rounded to a double.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_cf_value_f64(const struct SsContinuedFraction *cf, double *out);

/**
 * The Lagrange constant as JSON. Rational inputs fail with
 * `INVALID_ARGUMENT`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_cf_lagrange_json(const struct SsContinuedFraction *cf, char **out);

/**
 * `Theta_k` of the slope as JSON.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_theta_json(const struct SsContinuedFraction *cf, uint32_t k, char **out);

/**
 * `A_{k,alpha}(m)` for the slope `alpha = value(cf)`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_kab_exponent(const struct SsContinuedFraction *cf,
                              uint32_t k,
                              uint32_t m,
                              bool right_closed,
                              uint64_t *out);

/**
 * The exponent record with a witness, as JSON.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_kab_exponent_json(const struct SsContinuedFraction *cf,
                                   uint32_t k,
                                   uint32_t m,
                                   bool right_closed,
                                   char **out);

/**
 * The k-abelian classes of the length-`m` factors as
 * `{"k","m","classes":[{"interval_index","members"}]}`.
 *
 * # Safety
 * `cf` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_classes_json(const struct SsContinuedFraction *cf,
                              uint32_t k,
                              uint32_t m,
                              bool right_closed,
                              char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void ss_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STURMIAN_SPECTRA_H */
