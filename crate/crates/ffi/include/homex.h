#ifndef HOMEX_H
#define HOMEX_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HomexSearchMode {
  HOMEX_SEARCH_MODE_PURE = 0,
  // Strongly connected with respect to the `m` argument.
  HOMEX_SEARCH_MODE_STRONG = 1,
} HomexSearchMode;

// Result code of every fallible call.
typedef enum HomexStatus {
  HOMEX_STATUS_OK = 0,
  HOMEX_STATUS_NULL_POINTER = 1,
  HOMEX_STATUS_INVALID_ARGUMENT = 2,
  HOMEX_STATUS_PARSE_ERROR = 3,
  HOMEX_STATUS_DOMAIN_ERROR = 4,
  HOMEX_STATUS_CAPACITY_ERROR = 5,
  HOMEX_STATUS_VERIFICATION_FAILED = 6,
  HOMEX_STATUS_BUFFER_TOO_SMALL = 7,
  HOMEX_STATUS_INTERNAL = 8,
} HomexStatus;

// A simplicial complex with vertex labels.
typedef struct HomexComplex HomexComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread, or null. The
// pointer stays valid until the next call into the library on this thread.
const char *homex_last_error_message(void);

// Builds a complex from `num_facets` faces stored back to back in
// `vertices`; face `i` has `sizes[i]` vertices. Faces contained in others are
// absorbed.
//
// # Safety
// `vertices` must point to `sum(sizes)` readable values and `sizes` to
// `num_facets`; either may be null when `num_facets` is zero.
enum HomexStatus homex_complex_from_facets(const uint32_t *vertices,
                                           const size_t *sizes,
                                           size_t num_facets,
                                           struct HomexComplex **out);

// Parses facet-list text (".sc" lines or the JSON form).
//
// # Safety
// `text` must be a NUL-terminated string.
enum HomexStatus homex_complex_parse(const char *text, struct HomexComplex **out);

// Releases a complex. Null is ignored.
//
// # Safety
// `x` must come from this library and not be used afterwards.
void homex_complex_free(struct HomexComplex *x);

// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_complex_num_vertices(const struct HomexComplex *x, size_t *out);

// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_complex_num_facets(const struct HomexComplex *x, size_t *out);

// Dimension, or -1 for the empty complex.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_complex_dim(const struct HomexComplex *x, int64_t *out);

// The facet list in ".sc" form with the complex's labels. Free the result
// with `homex_string_free`.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_complex_to_sc(const struct HomexComplex *x, char **out);

// # Safety
// `s` must come from this library and not be used afterwards.
void homex_string_free(char *s);

// # Safety
// `out` must be writable.
enum HomexStatus homex_build_mh(size_t d, size_t k, struct HomexComplex **out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_build_ms(size_t d, size_t k, struct HomexComplex **out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_build_rel(size_t d, size_t k, size_t m, struct HomexComplex **out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_build_suspension(size_t d, size_t k, struct HomexComplex **out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_bound_pure(size_t d, size_t k, size_t *out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_bound_strong(size_t d, size_t k, size_t *out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_bound_rel(size_t d, size_t k, size_t m, size_t *out);

// # Safety
// `out` must be writable.
enum HomexStatus homex_connectivity_threshold(size_t d, size_t k, size_t *out);

// Betti number and torsion coefficients of `H_degree`. The torsion list is
// written to `torsion` when `torsion_cap` suffices; `torsion_len` always
// receives its length, and a short buffer gives `BufferTooSmall`.
//
// # Safety
// `x` must be a live handle, `betti` and `torsion_len` writable, and
// `torsion` valid for `torsion_cap` writes (or null when the cap is zero).
enum HomexStatus homex_homology_group(const struct HomexComplex *x,
                                      size_t degree,
                                      bool reduced,
                                      size_t *betti,
                                      uint64_t *torsion,
                                      size_t torsion_cap,
                                      size_t *torsion_len);

// Whether reduced `H_k` is nonzero.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_is_homology_nontrivial(const struct HomexComplex *x, size_t k, bool *out);

// Whether the facets are connected through shared faces of dimension
// `m-1`. Fails when some facet has dimension below `m`.
//
// # Safety
// `x` must be a live handle and `out` writable.
enum HomexStatus homex_is_strongly_connected(const struct HomexComplex *x, size_t m, bool *out);

// Exhaustively finds the fewest vertices of a complex in the class with
// nonzero `H_k` and checks it against the closed-form bound. `m` is read only
// in strong mode; `max_n = 0` uses the default cap and `jobs = 0` all cores.
// A mismatch gives `VerificationFailed` with `n_min` still written. The
// witness is written when `witness` is not null.
//
// # Safety
// `n_min` must be writable; `witness` may be null.
enum HomexStatus homex_find_minimal_witness(size_t d,
                                            size_t k,
                                            enum HomexSearchMode mode,
                                            size_t m,
                                            size_t max_n,
                                            size_t jobs,
                                            size_t *n_min,
                                            struct HomexComplex **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMEX_H */
