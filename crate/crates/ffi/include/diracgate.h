#ifndef DIRACGATE_H
#define DIRACGATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DG_OK 0

#define DG_ERR_INVALID 1

#define DG_ERR_PARSE 2

#define DG_ERR_DIMENSION 3

#define DG_ERR_VERIFICATION 4

#define DG_ERR_NULL 5

#define DG_ERR_PANIC 6

// Opaque dense complex square matrix.
typedef struct DgMatrix DgMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next failing call on the same thread; do not free.
const char *dg_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *dg_version(void);

void dg_string_free(char *s);

void dg_matrix_free(struct DgMatrix *m);

// Named gate such as "CC", "SWAP", "hadamard", "toffoli".
int32_t dg_gate_named(const char *name, struct DgMatrix **out);

// Coupling expression such as "co(I, X)" or "cyf(I, X)".
int32_t dg_gate_compile(const char *expr, struct DgMatrix **out);

// Matrix from `dim*dim` row-major real and imaginary parts.
int32_t dg_matrix_from_row_major(size_t dim,
                                 const double *re,
                                 const double *im,
                                 struct DgMatrix **out);

// Row/column count of the matrix, 0 for NULL.
size_t dg_matrix_dim(const struct DgMatrix *m);

int32_t dg_matrix_get(const struct DgMatrix *m, size_t row, size_t col, double *re, double *im);

// `max |(M†M − I)_ij|`.
int32_t dg_matrix_unitarity_error(const struct DgMatrix *m, double *out);

// Coefficients a_0..a_3 of a 2x2 matrix over σ0..σ3; `re` and `im` hold 4 doubles each.
int32_t dg_pauli_decompose(const struct DgMatrix *m, double *re, double *im);

// θ^mu of hierarchy level n (1 ≤ n ≤ 8, 0 ≤ mu ≤ 3).
int32_t dg_theta(uint32_t n, uint32_t mu, struct DgMatrix **out);

// Positive Landau energies ω_c√N for N = 0..=nmax into `eps` (nmax + 1 doubles).
int32_t dg_landau_spectrum(double vf, double b, size_t nmax, double *eps);

// `ṗ^α = q v_β F^{αβ}` for constant fields. `v` has 4 doubles, `e` and `b`
// 3 each, `out` receives 4.
int32_t dg_lorentz_force(double q, const double *v, const double *e, const double *b, double *out);

// JSON report of built-in scenario `table` (0..=3). Free with [`dg_string_free`].
int32_t dg_table_scenario_json(uint32_t table, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRACGATE_H */
