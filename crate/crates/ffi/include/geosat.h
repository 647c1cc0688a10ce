#ifndef GEOSAT_H
#define GEOSAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GeosatStatus {
  GEOSAT_STATUS_OK = 0,
  /**
   * The answer is negative: nondegenerate, invalid certificate.
   */
  GEOSAT_STATUS_NEGATIVE = 1,
  GEOSAT_STATUS_PARSE_ERROR = 2,
  GEOSAT_STATUS_LIMIT_EXCEEDED = 3,
  GEOSAT_STATUS_INVALID_ARGUMENT = 4,
  GEOSAT_STATUS_HASH_MISMATCH = 5,
  GEOSAT_STATUS_MALFORMED_CERTIFICATE = 6,
  GEOSAT_STATUS_INTERNAL = 7,
} GeosatStatus;

/**
 * Opaque theory handle.
 */
typedef struct GeosatTheory GeosatTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call into the library.
 */
const char *geosat_last_error(void);

/**
 * Parses theory text. `max_universe` of 0 selects the default limit.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GeosatStatus geosat_theory_parse(const char *text,
                                      size_t max_universe,
                                      struct GeosatTheory **out);

/**
 * The non-trivial-ideal theory of `Z/n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum GeosatStatus geosat_theory_gen_nti(size_t n, struct GeosatTheory **out);

/**
 * # Safety
 * `t` must come from this library and not be used afterwards; null is ignored.
 */
void geosat_theory_free(struct GeosatTheory *t);

/**
 * # Safety
 * `t` must be a live handle or null (returns 0).
 */
size_t geosat_theory_symbol_count(const struct GeosatTheory *t);

/**
 * # Safety
 * `t` must be a live handle or null (returns 0).
 */
size_t geosat_theory_axiom_count(const struct GeosatTheory *t);

/**
 * Canonical text of the theory, or null for a null handle.
 *
 * # Safety
 * `t` must be a live handle or null.
 */
char *geosat_theory_to_string(const struct GeosatTheory *t);

/**
 * Decides degeneracy: `Ok` when degenerate, `Negative` when not.
 *
 * # Safety
 * `t` must be a live handle.
 */
enum GeosatStatus geosat_check(const struct GeosatTheory *t);

/**
 * Number of set models, by exhaustive search.
 *
 * # Safety
 * `t` must be a live handle; `count` must be writable.
 */
enum GeosatStatus geosat_model_count(const struct GeosatTheory *t, size_t *count);

/**
 * Writes a certificate as JSON to `*json`; returns `Ok` for a refutation
 * and `Negative` for a nondegeneracy witness.
 *
 * # Safety
 * `t` must be a live handle; `json` must be writable.
 */
enum GeosatStatus geosat_prove(const struct GeosatTheory *t, char **json);

/**
 * Verifies a JSON certificate: `Ok` when valid, `Negative` with the locus
 * in [`geosat_last_error`] when not.
 *
 * # Safety
 * `t` must be a live handle; `json` a NUL-terminated string.
 */
enum GeosatStatus geosat_verify(const struct GeosatTheory *t, const char *json);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards; null is ignored.
 */
void geosat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOSAT_H */
