// Basic dense kernels: casts, Gram product, Cholesky, column norms/scaling,
// orthogonality error, matrix product, Householder QR.
//
// Reproducibility contract: every reduction uses a fixed summation order
// (ascending row index), so results are bitwise comparable against a naive
// oracle with the same order, at any optimization level that preserves IEEE
// semantics (no -ffast-math).

#pragma once

#include "mpsvd/types.hpp"

namespace mpsvd {

// Entry-wise precision conversion.  Working->Higher is exact; Higher->Working
// rounds to nearest-even and rejects entries whose magnitude exceeds the
// binary32 finite range (CastOverflowError, 1-based entry).  Non-finite
// entries are rejected as InvalidArgument.
DenseMatrix cast(const DenseMatrix& a, Precision target);

// M = A^T A, n x n, in A's own precision.  The upper triangle is computed
// (each entry a single dot product accumulated over ascending row index) and
// mirrored, so the result is exactly symmetric by construction.
DenseMatrix gram(const DenseMatrix& a);

// Upper-triangular Cholesky factor R with M ~= R^T R, right-looking and
// unblocked, in M's precision.  Throws NotPositiveDefiniteError(k) with the
// 1-based pivot index when a pivot is <= 0.  Only the upper triangle of M is
// read; symmetry of the lower triangle is the caller's contract.
DenseMatrix cholesky(const DenseMatrix& m);

// Euclidean norm of every column, one-pass max-scaled accumulation so that
// squares neither overflow nor underflow prematurely.  Zero columns raise
// ZeroColumnError (1-based).  Result carries A's precision tag.
DiagMatrix col_norms(const DenseMatrix& a);

// Multiply (or divide, when invert) column j by s_j, in A's precision.
// s entries are rounded to A's precision before use.  invert with a zero
// entry raises ZeroDivisorError (1-based).
DenseMatrix scale_columns(const DenseMatrix& a, const DiagMatrix& s,
                          bool invert);

// || Q^T Q - I ||_F accumulated in binary64 regardless of Q's precision.
double orth_error(const DenseMatrix& q);

// C = A * B in the common precision of A and B (they must match), summation
// over the inner index in ascending order for every output entry.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

// Thin Householder QR: A (m x n, m >= n) = Q R with Q m x n explicit and R
// n x n upper triangular, computed column by column in A's precision.
// A zero (or fully cancelled) column raises ZeroColumnError.
struct QrFactors {
  DenseMatrix q;
  DenseMatrix r;
};
QrFactors householder_qr(const DenseMatrix& a);

}  // namespace mpsvd
