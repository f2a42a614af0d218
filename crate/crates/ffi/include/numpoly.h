#ifndef NUMPOLY_H
#define NUMPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NumpolyBasis {
  NUMPOLY_BASIS_MONOMIAL = 0,
  NUMPOLY_BASIS_BINOMIAL = 1,
} NumpolyBasis;

typedef enum NumpolyRing {
  NUMPOLY_RING_A = 0,
  NUMPOLY_RING_AST = 1,
  NUMPOLY_RING_AP = 2,
  NUMPOLY_RING_ASTP = 3,
  NUMPOLY_RING_KO = 4,
} NumpolyRing;

typedef enum NumpolyStatus {
  NUMPOLY_STATUS_OK = 0,
  NUMPOLY_STATUS_NULL_POINTER = 1,
  NUMPOLY_STATUS_INVALID_UTF8 = 2,
  NUMPOLY_STATUS_PARSE = 3,
  // bad prime, ring/prime mismatch, non-integral input and similar
  NUMPOLY_STATUS_DOMAIN = 4,
  NUMPOLY_STATUS_PRECISION = 5,
  NUMPOLY_STATUS_INTERNAL = 6,
  NUMPOLY_STATUS_PANIC = 7,
} NumpolyStatus;

// Opaque Laurent polynomial with rational coefficients.
typedef struct NumpolyPoly NumpolyPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an expression in `w` such as `"(w^2-1)/3"` or a polynomial JSON
// document in either basis.
//
// # Safety
// `expr` must be a NUL-terminated string and `out` a valid pointer.
enum NumpolyStatus numpoly_poly_parse(const char *expr, struct NumpolyPoly **out);

// # Safety
// `poly` must come from this library and not be used afterwards. Null is ignored.
void numpoly_poly_free(struct NumpolyPoly *poly);

// # Safety
// All pointers must be valid; `a` and `b` are borrowed.
enum NumpolyStatus numpoly_poly_mul(const struct NumpolyPoly *a,
                                    const struct NumpolyPoly *b,
                                    struct NumpolyPoly **out);

// # Safety
// All pointers must be valid; `a` and `b` are borrowed.
enum NumpolyStatus numpoly_poly_add(const struct NumpolyPoly *a,
                                    const struct NumpolyPoly *b,
                                    struct NumpolyPoly **out);

// Human-readable form, e.g. `1/3*w^2 - 1/3`.
//
// # Safety
// `poly` and `out` must be valid.
enum NumpolyStatus numpoly_poly_to_string(const struct NumpolyPoly *poly, char **out);

// Compact JSON in the requested basis. The binomial basis needs a
// polynomial without negative powers.
//
// # Safety
// `poly` and `out` must be valid.
enum NumpolyStatus numpoly_poly_to_json(const struct NumpolyPoly *poly,
                                        enum NumpolyBasis basis,
                                        char **out);

// Ring membership. `prime == 0` means no prime. `is_member` receives 0 or
// 1; `verdict_json`, if not null, receives the verdict with its witness.
//
// # Safety
// `poly` and `is_member` must be valid; `verdict_json` may be null.
enum NumpolyStatus numpoly_member(const struct NumpolyPoly *poly,
                                  enum NumpolyRing ring,
                                  uint64_t prime,
                                  int32_t *is_member,
                                  char **verdict_json);

// Teichmüller lift of the smallest primitive root mod `p`, reduced mod
// `p^precision`.
//
// # Safety
// `out` must be valid.
enum NumpolyStatus numpoly_teichmuller(uint64_t p, uint32_t precision, uint64_t *out);

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into the library on this thread.
const char *numpoly_last_error(void);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void numpoly_string_free(char *s);

// Library version, static storage.
const char *numpoly_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUMPOLY_H */
