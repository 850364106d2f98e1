/* C interface to the mixed precision Gram-based thin SVD library.
 *
 * All functions return an mpsvd_status; every non-OK status leaves a
 * human-readable message in thread-local storage retrievable with
 * mpsvd_last_error_message().  Objects returned through ** out-parameters are
 * owned by the caller and released with the matching _destroy function.
 * Pointers returned from accessor functions (matrices, arrays) borrow from
 * their parent object and stay valid until that parent is destroyed.
 *
 * Matrix entries are addressed (row, col), zero-based, and exchanged as
 * doubles regardless of the matrix's storage precision: storing into an f32
 * matrix rounds to binary32, reading widens exactly.
 */

#ifndef MPSVD_H
#define MPSVD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpsvd_status {
  MPSVD_OK = 0,
  MPSVD_ERR_INVALID_ARGUMENT = 1,
  MPSVD_ERR_NOT_POSITIVE_DEFINITE = 2,
  MPSVD_ERR_NO_CONVERGENCE = 3,
  MPSVD_ERR_ZERO_COLUMN = 4,
  MPSVD_ERR_ZERO_DIVISOR = 5,
  MPSVD_ERR_CAST_OVERFLOW = 6,
  MPSVD_ERR_TINY_SINGULAR_VALUE = 7,
  MPSVD_ERR_INFEASIBLE = 8,
  MPSVD_ERR_IO = 9,
  MPSVD_ERR_INTERNAL = 10
} mpsvd_status;

typedef enum mpsvd_precision {
  MPSVD_PRECISION_WORKING = 0, /* IEEE binary32 */
  MPSVD_PRECISION_HIGHER = 1   /* IEEE binary64 */
} mpsvd_precision;

typedef enum mpsvd_eigensolver {
  MPSVD_EIG_TWOSIDED_JACOBI = 0,
  MPSVD_EIG_GRAM_CHOL_SVD = 1,
  MPSVD_EIG_ONESIDED_JACOBI_GRAM = 2
} mpsvd_eigensolver;

typedef struct mpsvd_matrix mpsvd_matrix;
typedef struct mpsvd_problem mpsvd_problem;
typedef struct mpsvd_svd_result mpsvd_svd_result;

/* --- diagnostics --------------------------------------------------------- */

/* Message for the most recent failure on this thread ("" if none). */
const char* mpsvd_last_error_message(void);
/* 1-based pivot/column/sigma index attached to the most recent failure on
 * this thread, or 0 when the error carries no index. */
int64_t mpsvd_last_error_index(void);

/* --- matrices ------------------------------------------------------------ */

mpsvd_status mpsvd_matrix_create(int64_t rows, int64_t cols, mpsvd_precision prec,
                                 mpsvd_matrix** out);
void mpsvd_matrix_destroy(mpsvd_matrix* a);

int64_t mpsvd_matrix_rows(const mpsvd_matrix* a);
int64_t mpsvd_matrix_cols(const mpsvd_matrix* a);
mpsvd_precision mpsvd_matrix_precision(const mpsvd_matrix* a);

mpsvd_status mpsvd_matrix_set(mpsvd_matrix* a, int64_t row, int64_t col, double value);
mpsvd_status mpsvd_matrix_get(const mpsvd_matrix* a, int64_t row, int64_t col,
                              double* value);

/* 1 when shape, precision, and every stored bit pattern agree, else 0. */
int mpsvd_matrix_bitwise_equal(const mpsvd_matrix* a, const mpsvd_matrix* b);

/* Text format: "m n f32|f64" header, then column-major entries printed with
 * shortest round-trip decimals, so write-then-read is bit-exact. */
mpsvd_status mpsvd_matrix_write_file(const char* path, const mpsvd_matrix* a);
mpsvd_status mpsvd_matrix_read_file(const char* path, mpsvd_matrix** out);

/* ||A^T A - I||_F evaluated in binary64. */
mpsvd_status mpsvd_orth_error(const mpsvd_matrix* a, double* out);

/* --- test problem generation --------------------------------------------- */

typedef struct mpsvd_problem_spec {
  int64_t m;       /* rows, m >= n */
  int64_t n;       /* columns */
  double kappa_d;  /* condition target for the diagonal scaling D */
  double kappa_b;  /* condition target for the unit-column factor B */
  int matrix_id;   /* 1..16, selects the (D-profile, sigma-profile) pair */
  uint64_t seed;
} mpsvd_problem_spec;

/* Builds A = cast(B * D) with unit-column B and diagonal D drawn from the
 * catalogued profiles; deterministic in (spec, seed). */
mpsvd_status mpsvd_generate_problem(const mpsvd_problem_spec* spec, mpsvd_problem** out);
void mpsvd_problem_destroy(mpsvd_problem* p);

const mpsvd_matrix* mpsvd_problem_a(const mpsvd_problem* p); /* f32, m x n */
const mpsvd_matrix* mpsvd_problem_b(const mpsvd_problem* p); /* f64, m x n */
/* Diagonal of D; length n. */
const double* mpsvd_problem_d(const mpsvd_problem* p, int64_t* count);
/* Singular values of the pre-cast product B*D, descending; length n. */
const double* mpsvd_problem_sigma_ref(const mpsvd_problem* p, int64_t* count);
double mpsvd_problem_realized_kappa_b(const mpsvd_problem* p);

/* --- solvers -------------------------------------------------------------- */

/* Gram-based thin SVD of an f32 matrix (m >= n, full column rank).  threads
 * parallelizes the Gram phase only; results are bitwise identical for every
 * thread count. */
mpsvd_status mpsvd_thin_svd(const mpsvd_matrix* a, mpsvd_eigensolver eig, int threads,
                            mpsvd_svd_result** out);

/* Householder-QR-then-Jacobi baseline, entirely at f32. */
mpsvd_status mpsvd_qr_svd_baseline(const mpsvd_matrix* a, mpsvd_svd_result** out);

void mpsvd_svd_destroy(mpsvd_svd_result* r);

const mpsvd_matrix* mpsvd_svd_u(const mpsvd_svd_result* r); /* f32, m x n */
const mpsvd_matrix* mpsvd_svd_v(const mpsvd_svd_result* r); /* f32, n x n */
const double* mpsvd_svd_sigma(const mpsvd_svd_result* r, int64_t* count);

/* Wall-clock seconds: {gram, eigen, compute_u, overlap, total}; the first
 * four partition the fifth.  The QR baseline reports gram = 0 and books its
 * QR factorization under overlap. */
void mpsvd_svd_times(const mpsvd_svd_result* r, double times[5]);
int mpsvd_svd_sync_events(const mpsvd_svd_result* r);
int64_t mpsvd_svd_gram_blocks(const mpsvd_svd_result* r);
int mpsvd_svd_is_qr_baseline(const mpsvd_svd_result* r);

/* Mixed precision Cholesky QR: Gram and Cholesky in binary64, rowwise
 * triangular solves in binary32. */
mpsvd_status mpsvd_cholesky_qr(const mpsvd_matrix* a, mpsvd_matrix** q_out,
                               mpsvd_matrix** r_out);

/* --- metrics -------------------------------------------------------------- */

/* Oracle singular values (one-sided Jacobi in binary64 on the widened
 * matrix); out must hold cols(a) entries. */
mpsvd_status mpsvd_reference_svd(const mpsvd_matrix* a, double* out, int64_t count);

mpsvd_status mpsvd_max_rel_sv_error(const double* computed, const double* reference,
                                    int64_t count, double* out);

mpsvd_status mpsvd_rowwise_backward_error(const mpsvd_matrix* a, const mpsvd_matrix* u,
                                          const double* sigma, int64_t count,
                                          const mpsvd_matrix* v, double* max_rel,
                                          int64_t* skipped_rows);

/* A-priori bounds with the default epsilon constants for the given problem
 * size, conditioning, and eigensolver route.  assumption_ok is cleared when
 * the first-order term exceeds 1/2 (bounds are vacuous there). */
mpsvd_status mpsvd_theoretical_bounds(int64_t n, double kappa_b, mpsvd_eigensolver eig,
                                      double* bound_sv, double* bound_orth,
                                      double* bound_backward, double* eps1,
                                      int* assumption_ok);

/* sigma_max / sigma_min via the binary64 Jacobi oracle. */
mpsvd_status mpsvd_estimate_kappa(const mpsvd_matrix* b, double* out);

/* --- formatting ----------------------------------------------------------- */

/* Shortest decimal string that parses back to the identical double.  Returns
 * the full length (excluding NUL); truncates if cap is too small.  cap of 32
 * always suffices. */
size_t mpsvd_format_shortest(double value, char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* MPSVD_H */
