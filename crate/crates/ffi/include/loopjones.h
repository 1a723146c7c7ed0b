#ifndef LOOPJONES_H
#define LOOPJONES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum LjStatus {
  LJ_STATUS_OK = 0,
  LJ_STATUS_NULL_POINTER = 1,
  LJ_STATUS_INVALID_UTF8 = 2,
  LJ_STATUS_INVALID_BRAID = 3,
  LJ_STATUS_NOT_A_KNOT = 4,
  LJ_STATUS_INVALID_ARGUMENT = 5,
  LJ_STATUS_UNVERIFIED = 6,
  LJ_STATUS_INTERNAL = 7,
  LJ_STATUS_PANIC = 8,
} LjStatus;

/**
 * A braid word.
 */
typedef struct LjBraid LjBraid;

/**
 * A loop expansion.
 */
typedef struct LjExpansion LjExpansion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *lj_last_error(void);

/**
 * Library version as a static string.
 */
const char *lj_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lj_string_free(char *s);

/**
 * Parses a braid word such as `"1 -2 1 -2"`. `strands = 0` infers the
 * strand count.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum LjStatus lj_braid_parse(const char *text, size_t strands, struct LjBraid **out);

/**
 * # Safety
 * `braid` must come from [`lj_braid_parse`] and not have been freed.
 */
void lj_braid_free(struct LjBraid *braid);

/**
 * Number of strands, or 0 for a null handle.
 *
 * # Safety
 * `braid` must be null or a live handle.
 */
size_t lj_braid_strands(const struct LjBraid *braid);

/**
 * 1 when the closure is a knot, 0 otherwise or for a null handle.
 *
 * # Safety
 * `braid` must be null or a live handle.
 */
int32_t lj_braid_is_knot(const struct LjBraid *braid);

/**
 * Alexander polynomial in `u = z^{1/2}`, symmetric with value 1 at 1.
 *
 * # Safety
 * `braid` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_alexander(const struct LjBraid *braid, char **out);

/**
 * Colored Jones polynomial `J_{K,alpha}` as a polynomial in `s = q^{1/2}`.
 *
 * # Safety
 * `braid` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_colored_jones(const struct LjBraid *braid, size_t alpha, char **out);

/**
 * Loop expansion to `order` in `ħ`, summing at least `cutoff` terms and
 * keeping `u`-degrees down to `floor` (negative).
 *
 * # Safety
 * `braid` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_loop_expansion(const struct LjBraid *braid,
                                size_t order,
                                size_t cutoff,
                                int32_t floor,
                                struct LjExpansion **out);

/**
 * # Safety
 * `exp` must come from [`lj_loop_expansion`] and not have been freed.
 */
void lj_expansion_free(struct LjExpansion *exp);

/**
 * 1 when the certified window does not reach the floor, 0 when it does,
 * -1 for a null handle.
 *
 * # Safety
 * `exp` must be null or a live handle.
 */
int32_t lj_expansion_is_partial(const struct LjExpansion *exp);

/**
 * Coefficients at `u`-degrees above this value are certified.
 *
 * # Safety
 * `exp` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_expansion_exact_above(const struct LjExpansion *exp, int32_t *out);

/**
 * Certified coefficient of `u^degree` in `V^(i)` as `"p/q"` text.
 * Fails with `LJ_STATUS_UNVERIFIED` for degrees outside the certified
 * window.
 *
 * # Safety
 * `exp` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_expansion_coefficient(const struct LjExpansion *exp,
                                       size_t i,
                                       int32_t degree,
                                       char **out);

/**
 * The expansion as JSON: braid, order, cutoff, certified tails.
 *
 * # Safety
 * `exp` must be a live handle and `out` a valid pointer.
 */
enum LjStatus lj_expansion_json(const struct LjExpansion *exp, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOOPJONES_H */
