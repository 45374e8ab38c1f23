#ifndef LEGENDRE_SUSY_H
#define LEGENDRE_SUSY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_INVALID_ARGUMENT = 2,
  LS_STATUS_OUT_OF_RANGE = 3,
  LS_STATUS_DOMAIN = 4,
  LS_STATUS_ALGEBRA = 5,
  LS_STATUS_INTERNAL = 6,
} LsStatus;

/**
 * Opaque handle to an element `(1 - x^2)^(k/2) p(x)`.
 */
typedef struct LsElement LsElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *ls_last_error_message(void);

/**
 * `P_n`, built with the ladder.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LsStatus ls_legendre(uint32_t n, struct LsElement **out);

/**
 * `P_{n,m}` for `|m| <= n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LsStatus ls_assoc_legendre(uint32_t n,
                                int64_t m,
                                bool condon_shortley,
                                struct LsElement **out);

/**
 * # Safety
 * `elem` must come from this library and not be used afterwards.
 */
void ls_element_free(struct LsElement *elem);

/**
 * Twice the exponent of `(1 - x^2)` in the element.
 *
 * # Safety
 * `elem` must be a live handle and `out` valid for writes.
 */
enum LsStatus ls_element_half_power(const struct LsElement *elem, int64_t *out);

/**
 * # Safety
 * `elem` must be a live handle and `out` valid for writes.
 */
enum LsStatus ls_element_eval(const struct LsElement *elem, double x, double *out);

/**
 * Plain-text rendering, e.g. `(3x^2 - 1)/2`.
 *
 * # Safety
 * `elem` must be a live handle and `out` valid for writes.
 */
enum LsStatus ls_element_to_text(const struct LsElement *elem, char **out);

/**
 * `{"k": .., "coeffs": [["num", "den"], ..]}`.
 *
 * # Safety
 * `elem` must be a live handle and `out` valid for writes.
 */
enum LsStatus ls_element_to_json(const struct LsElement *elem, char **out);

/**
 * Checks one identity exactly. `params` is a comma-separated list of
 * integers or fractions such as `"3,-1/2"`; null or empty means none.
 * `report_json` may be null.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `holds` must be valid for
 * writes.
 */
enum LsStatus ls_verify_identity(const char *identity,
                                 const char *params,
                                 bool *holds,
                                 char **report_json);

/**
 * Levels of `"legendre"` or `"oscillator"` as JSON
 * `{"params": [..], "shifts": [..], "levels": [..]}` with fraction strings.
 * `omega` is required for the oscillator and ignored otherwise.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be valid for
 * writes.
 */
enum LsStatus ls_spectrum_json(const char *chain, uint32_t levels, const char *omega, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void ls_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGENDRE_SUSY_H */
