/* Generated by cbindgen from the singzeta-ffi crate. Do not edit. */

#ifndef SINGZETA_H
#define SINGZETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. `SZ_OK` is zero.
 */
typedef enum {
  SZ_OK = 0,
  SZ_NULL_POINTER = 1,
  SZ_INVALID_UTF8 = 2,
  SZ_PARSE_ERROR = 3,
  SZ_INVALID_INPUT = 4,
  SZ_NOT_CONVENIENT = 5,
  SZ_UNCATALOGUED = 6,
  SZ_GRAPH_ERROR = 7,
  SZ_IO_ERROR = 8,
  SZ_INTERNAL_ERROR = 9,
} SzStatus;

/*
 A decorated dual resolution graph.
 */
typedef struct SzGraph SzGraph;

/*
 A validated member of the family.
 */
typedef struct SzMember SzMember;

/*
 A polynomial with rational coefficients.
 */
typedef struct SzPolynomial SzPolynomial;

/*
 A monodromy zeta-function.
 */
typedef struct SzZeta SzZeta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *sz_last_error_message(void);

void sz_clear_last_error(void);

/*
 Library version as a static string.
 */
const char *sz_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library.
 */
void sz_string_free(char *s);

/*
 Parse a polynomial in `z1, z2, z3`.

 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
SzStatus sz_polynomial_parse(const char *text, SzPolynomial **out);

/*
 # Safety
 `p` must be null or a handle from `sz_polynomial_parse`.
 */
void sz_polynomial_free(SzPolynomial *p);

/*
 Canonical text form.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
SzStatus sz_polynomial_to_string(const SzPolynomial *p, char **out);

/*
 Newton number of a convenient germ.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
SzStatus sz_newton_number(const SzPolynomial *p, int64_t *out);

/*
 Zeta-function from the Newton boundary.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
SzStatus sz_varchenko_zeta(const SzPolynomial *p, SzZeta **out);

/*
 # Safety
 `z` must be null or a zeta handle.
 */
void sz_zeta_free(SzZeta *z);

/*
 Pretty form, e.g. `(1-t^5)^2 (1-t^10)^-5`.

 # Safety
 `z` must be a live handle; `out` must be writable.
 */
SzStatus sz_zeta_to_string(const SzZeta *z, char **out);

/*
 Number of factors; exponents are read with [`sz_zeta_factor`].

 # Safety
 `z` must be a live handle.
 */
SzStatus sz_zeta_factor_count(const SzZeta *z, size_t *out);

/*
 The `index`-th factor `(1 - t^degree)^exponent`, in increasing degree.

 # Safety
 `z` must be a live handle; outputs must be writable.
 */
SzStatus sz_zeta_factor(const SzZeta *z, size_t index, uint64_t *degree, int64_t *exponent);

/*
 Milnor number `(-1)^n (deg ζ + 1)`.

 # Safety
 `z` must be a live handle; `out` must be writable.
 */
SzStatus sz_zeta_milnor(const SzZeta *z, size_t nvars, int64_t *out);

/*
 Load a member from its JSON description.

 # Safety
 `json` must be a nul-terminated string; `out` must be writable.
 */
SzStatus sz_member_from_json(const char *json, SzMember **out);

/*
 # Safety
 `m` must be null or a member handle.
 */
void sz_member_free(SzMember *m);

/*
 Zeta-function of the member's germ at the origin.

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
SzStatus sz_member_zeta(const SzMember *m, SzZeta **out);

/*
 Dual graph using the bundled catalogue.

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
SzStatus sz_graph_build(const SzMember *m, SzGraph **out);

/*
 # Safety
 `g` must be null or a graph handle.
 */
void sz_graph_free(SzGraph *g);

/*
 # Safety
 `g` must be a live handle; `out` must be writable.
 */
SzStatus sz_graph_to_dot(const SzGraph *g, char **out);

/*
 Writes 1 to `out` if the graphs are isomorphic as decorated graphs.

 # Safety
 `a`, `b` must be live handles; `out` must be writable.
 */
SzStatus sz_graphs_isomorphic(const SzGraph *a,
                              const SzGraph *b,
                              bool compare_multiplicity,
                              bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINGZETA_H */
