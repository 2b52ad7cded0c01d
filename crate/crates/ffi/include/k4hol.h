#ifndef K4HOL_H
#define K4HOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum K4holStatus {
  K4HOL_STATUS_OK = 0,
  // A required pointer argument was null.
  K4HOL_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8 or named nothing known.
  K4HOL_STATUS_INVALID_ARGUMENT = 2,
  // The computation itself failed or a check did not hold.
  K4HOL_STATUS_MATH_ERROR = 3,
  // An internal panic was caught at the boundary.
  K4HOL_STATUS_PANIC = 4,
} K4holStatus;

// A split Lie algebra given by Chevalley structure constants.
typedef struct K4holAlgebra K4holAlgebra;

// A root system.
typedef struct K4holRootSystem K4holRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *k4hol_version(void);

// Message for the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *k4hol_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void k4hol_string_free(char *s);

// Builds the root system named by `name`, such as `"E7"` or `"a3"`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum K4holStatus k4hol_root_system_new(const char *name, struct K4holRootSystem **out);

// Releases a root system. Null is ignored.
//
// # Safety
// `rs` must come from [`k4hol_root_system_new`] and not be used afterwards.
void k4hol_root_system_free(struct K4holRootSystem *rs);

// Rank and number of roots.
//
// # Safety
// `rs` must be a live handle; the out pointers must be valid.
enum K4holStatus k4hol_root_system_size(const struct K4holRootSystem *rs,
                                        size_t *rank,
                                        size_t *root_count);

// Copies the Cartan matrix, row-major, into `buf` of `len` entries.
// `len` must be at least rank squared.
//
// # Safety
// `rs` must be a live handle and `buf` valid for `len` writes.
enum K4holStatus k4hol_root_system_cartan(const struct K4holRootSystem *rs,
                                          int32_t *buf,
                                          size_t len);

// Weyl orbits of involutions of `rs` as a JSON string.
//
// # Safety
// `rs` must be a live handle and `out` a valid pointer.
enum K4holStatus k4hol_classify_involutions_json(const struct K4holRootSystem *rs, char **out);

// Chevalley basis structure constants for a simply laced root system.
//
// # Safety
// `rs` must be a live handle and `out` a valid pointer.
enum K4holStatus k4hol_algebra_new(const struct K4holRootSystem *rs, struct K4holAlgebra **out);

// Releases an algebra. Null is ignored.
//
// # Safety
// `alg` must come from [`k4hol_algebra_new`] and not be used afterwards.
void k4hol_algebra_free(struct K4holAlgebra *alg);

// Dimension of the algebra.
//
// # Safety
// `alg` must be a live handle and `dim` a valid pointer.
enum K4holStatus k4hol_algebra_dim(const struct K4holAlgebra *alg, size_t *dim);

// `N(a, b)` for root indices `a` and `b`: `[X_a, X_b] = N(a, b) X_{a+b}`,
// zero when `a + b` is not a root.
//
// # Safety
// `alg` must be a live handle and `n` a valid pointer.
enum K4holStatus k4hol_algebra_structure_constant(const struct K4holAlgebra *alg,
                                                  size_t a,
                                                  size_t b,
                                                  int64_t *n);

// Runs the E6 verification (Jacobi, compact form, four fixed subalgebras)
// and writes the report as JSON. Returns `MathError` with the report still
// written when some map does not match its expected fixed type.
//
// # Safety
// `out` must be a valid pointer.
enum K4holStatus k4hol_chevalley_verify_json(char **out);

// Admissible pairs over the whole catalog of labeled groups as JSON.
//
// # Safety
// `out` must be a valid pointer.
enum K4holStatus k4hol_admissible_pairs_json(char **out);

// Admissible pairs of one catalog group, such as `"x1-x4"`, as JSON.
//
// # Safety
// `group` must be a NUL-terminated string and `out` a valid pointer.
enum K4holStatus k4hol_group_pairs_json(const char *group, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K4HOL_H */
