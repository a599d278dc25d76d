#ifndef CHOWLA_MILNOR_H
#define CHOWLA_MILNOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CmStatus {
  CM_STATUS_OK = 0,
  CM_STATUS_NULL_POINTER = 1,
  CM_STATUS_INVALID_UTF8 = 2,
  CM_STATUS_USAGE = 3,
  CM_STATUS_DOMAIN = 4,
  CM_STATUS_PARSE = 5,
  CM_STATUS_PANIC = 6,
} CmStatus;

/**
 * Opaque element of a cyclotomic field.
 */
typedef struct CmElement CmElement;

/**
 * Opaque expansion of `D^{k-1}(π cot πz)`.
 */
typedef struct CmExpansion CmExpansion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, empty after success.
 * The pointer stays valid until the next call into this library.
 */
const char *cm_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cm_string_free(char *s);

/**
 * `ζ(k, a/q)` to `digits` decimal digits, as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CmStatus cm_hurwitz_zeta(uint32_t k, int64_t a, int64_t q, uint32_t digits, char **out);

/**
 * Runs one experiment config (the JSON accepted by batch mode). Writes the
 * report text and the process exit code the CLI would use; a usage failure
 * inside the run still returns `Ok` with exit code 2 and the message in
 * [`cm_last_error`].
 *
 * # Safety
 * `config_json` must be a nul-terminated string; `out` and `exit_code` valid pointers.
 */
enum CmStatus cm_run_json(const char *config_json, char **out, int32_t *exit_code);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum CmStatus cm_expansion_new(uint32_t k, struct CmExpansion **out);

/**
 * # Safety
 * `e` must be a live handle.
 */
uint32_t cm_expansion_order(const struct CmExpansion *e);

/**
 * Coefficient `c_l` as a decimal string.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_expansion_coefficient(const struct CmExpansion *e, uint32_t l, char **out);

/**
 * JSON form `{"k":…,"coeffs":{…}}`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_expansion_to_json(const struct CmExpansion *e, char **out);

/**
 * # Safety
 * `e` must come from [`cm_expansion_new`] and not have been freed. Null is ignored.
 */
void cm_expansion_free(struct CmExpansion *e);

/**
 * Parses the text form `q; c0, c1, …`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum CmStatus cm_element_parse(const char *text, struct CmElement **out);

/**
 * `(ζ(k,a/q) − ζ(k,1−a/q)) / (2πi)^k` as an exact element, odd `k` only.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CmStatus cm_exact_ratio(uint32_t k, int64_t a, int64_t q, struct CmElement **out);

/**
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_element_to_string(const struct CmElement *x, char **out);

/**
 * # Safety
 * `x`, `y` must be live handles and `out` a valid pointer.
 */
enum CmStatus cm_element_mul(const struct CmElement *x,
                             const struct CmElement *y,
                             struct CmElement **out);

/**
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_element_inverse(const struct CmElement *x, struct CmElement **out);

/**
 * `σ_t`, sending `ζ_q ↦ ζ_q^t` for `gcd(t, q) = 1`.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_element_galois(const struct CmElement *x, int64_t t, struct CmElement **out);

/**
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum CmStatus cm_element_is_in_subfield(const struct CmElement *x, uint64_t d, bool *out);

/**
 * # Safety
 * `x` must come from this library and not have been freed. Null is ignored.
 */
void cm_element_free(struct CmElement *x);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHOWLA_MILNOR_H */
