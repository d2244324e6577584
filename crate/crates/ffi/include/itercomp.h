#ifndef ITERCOMP_H
#define ITERCOMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum ItcStatus {
  ITC_STATUS_OK = 0,
  ITC_STATUS_NULL_POINTER = 1,
  ITC_STATUS_INVALID_UTF8 = 2,
  ITC_STATUS_PARSE = 3,
  ITC_STATUS_INVALID_INPUT = 4,
  // A degree, extension or integer limit was exceeded.
  ITC_STATUS_CAP = 5,
  ITC_STATUS_NOT_GENERIC = 6,
  ITC_STATUS_WITNESS_EXHAUSTED = 7,
  // An internal consistency check failed.
  ITC_STATUS_ASSERTION = 8,
  ITC_STATUS_OUT_OF_RANGE = 9,
  ITC_STATUS_PANIC = 10,
} ItcStatus;

typedef enum ItcPairClass {
  ITC_PAIR_CLASS_CRITICAL = 0,
  ITC_PAIR_CLASS_P_CRITICAL = 1,
  ITC_PAIR_CLASS_GENERIC = 2,
} ItcPairClass;

// How [`itc_profile_compute`] obtains the profile.
typedef enum ItcMode {
  // Factor `f(g^(n)(x))` itself.
  ITC_MODE_DIRECT = 0,
  // Factor `g^(n)(x) - alpha` over the field of a root `alpha` of each
  // irreducible factor of `f`.
  ITC_MODE_VIA_ROOT = 1,
} ItcMode;

// A finite field `F_q`.
typedef struct ItcField ItcField;

// A polynomial over an [`ItcField`].
typedef struct ItcPoly ItcPoly;

// The arithmetic functions and factor census of one `f(g^(n)(x))`.
typedef struct ItcProfile ItcProfile;

// Resource limits; obtain defaults from [`itc_config_default`].
typedef struct ItcConfig {
  uint64_t degree_cap;
  uint64_t seed;
  uint32_t ambient_cap;
} ItcConfig;

// The seven arithmetic functions for one `n`.
typedef struct ItcProfileValues {
  uint32_t n;
  // Largest multiplicity `E`.
  uint64_t max_mult;
  // Smallest multiplicity `e`.
  uint64_t min_mult;
  // Degree of the squarefree part.
  uint64_t delta;
  // Largest factor degree `M`.
  uint64_t max_deg;
  // Smallest factor degree `m`.
  uint64_t min_deg;
  // Number of distinct irreducible factors `N`.
  uint64_t count;
} ItcProfileValues;

// `count` distinct irreducible factors of the given degree and multiplicity.
typedef struct ItcCensusRow {
  uint64_t degree;
  uint64_t multiplicity;
  uint64_t count;
} ItcCensusRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent `itc_*` call on this thread, empty when that
// call succeeded. The pointer stays valid until the next call on the same
// thread.
const char *itc_last_error(void);

// Library version as a static nul-terminated string.
const char *itc_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from an `itc_*` out-parameter and not be freed twice.
void itc_string_free(char *s);

struct ItcConfig itc_config_default(void);

// Creates a field from `p`, `p^m` or a prime power `q`, with an optional
// modulus in `t` (null for the default).
//
// # Safety
// String arguments must be null or nul-terminated; `out` must be writable.
enum ItcStatus itc_field_new(const char *text, const char *modulus, struct ItcField **out);

// # Safety
// `field` must be null or a handle from [`itc_field_new`], freed once.
void itc_field_free(struct ItcField *field);

// Number of elements `q` of the field, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
uint64_t itc_field_order(const struct ItcField *field);

// Parses a polynomial in `x` over `field`.
//
// # Safety
// `field` must be a live handle, `text` nul-terminated, `out` writable.
enum ItcStatus itc_poly_parse(const struct ItcField *field, const char *text, struct ItcPoly **out);

// # Safety
// `poly` must be null or a handle from [`itc_poly_parse`], freed once.
void itc_poly_free(struct ItcPoly *poly);

// Canonical text of `poly`; it parses back to an equal polynomial.
//
// # Safety
// `poly` must be a live handle and `out` writable.
enum ItcStatus itc_poly_to_string(const struct ItcPoly *poly, char **out);

// Classifies `(f, g)`; `deg f >= 1` and `deg g >= 2` are required.
//
// # Safety
// `f` and `g` must be live handles over the same field; `out` writable.
enum ItcStatus itc_classify(const struct ItcPoly *f,
                            const struct ItcPoly *g,
                            enum ItcPairClass *out);

// Computes the profile of `f(g^(n)(x))`. `cfg` may be null for defaults.
// Degenerate pairs are accepted; use [`itc_classify`] to reject them.
//
// # Safety
// `f` and `g` must be live handles, `cfg` null or readable, `out` writable.
enum ItcStatus itc_profile_compute(const struct ItcPoly *f,
                                   const struct ItcPoly *g,
                                   uint32_t n,
                                   enum ItcMode mode,
                                   const struct ItcConfig *cfg,
                                   struct ItcProfile **out);

// # Safety
// `profile` must be null or a handle from [`itc_profile_compute`], freed once.
void itc_profile_free(struct ItcProfile *profile);

// # Safety
// `profile` must be a live handle and `out` writable.
enum ItcStatus itc_profile_values(const struct ItcProfile *profile, struct ItcProfileValues *out);

// Number of census rows, or 0 for a null handle. Rows are sorted by
// degree, then multiplicity.
//
// # Safety
// `profile` must be null or a live handle.
size_t itc_profile_census_len(const struct ItcProfile *profile);

// # Safety
// `profile` must be a live handle and `out` writable.
enum ItcStatus itc_profile_census_row(const struct ItcProfile *profile,
                                      size_t index,
                                      struct ItcCensusRow *out);

// The profile as one JSON object in the layout of `itercomp profile
// --format json`.
//
// # Safety
// `profile` must be a live handle and `out` writable.
enum ItcStatus itc_profile_to_json(const struct ItcProfile *profile, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ITERCOMP_H */
