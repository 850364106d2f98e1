// One-sided Jacobi SVD and two-sided (classical cyclic) Jacobi symmetric
// eigensolver.
//
// Both kernels run cyclic-by-rows pivot sweeps with a *relative* stopping
// criterion, which is what buys high relative accuracy on strongly scaled
// inputs:
//
//   one-sided:  |g_i^T g_j|  <=  tol * ||g_i|| * ||g_j||
//   two-sided:  |m_ij|       <=  tol * sqrt(m_ii) * sqrt(m_jj)
//
// with tol = n * u(precision) unless overridden.  The comparison uses the
// product of square roots rather than sqrt(a*b): a*b can underflow the
// working precision when two tiny columns meet, which would turn the
// threshold into zero and stall convergence.
//
// Sorting is a stable descending permutation applied identically to the
// values and to the U/V columns.  Sign convention: in every column of V the
// entry of largest magnitude is made nonnegative (ties: lowest row index
// wins), and U's columns follow V's sign flips.

#pragma once

#include <vector>

#include "mpsvd/types.hpp"

namespace mpsvd {

struct JacobiConfig {
  double tol = 0.0;     // 0 means: use n * u(input precision)
  int max_sweeps = 30;  // hard NoConvergenceError beyond this
};

struct SvdFactors {
  DenseMatrix u;              // m x n
  std::vector<double> sigma;  // descending, values exact in `precision`
  DenseMatrix v;              // n x n
  Precision precision;
};

struct EigFactors {
  DenseMatrix v;               // n x n
  std::vector<double> lambda;  // descending, strictly positive
  Precision precision;
};

// Optional instrumentation filled by the kernels.
struct JacobiStats {
  int sweeps = 0;            // sweeps executed, including the detection sweep
  long rotations = 0;        // plane rotations actually applied
  long pairs_per_sweep = 0;  // n(n-1)/2
};

// Hestenes one-sided Jacobi on the columns of G (m >= n, full column rank).
// Singular values are the converged column norms (max-scaled accumulation);
// U is the column-normalized rotated matrix, V accumulates the rotations.
// Errors: NoConvergenceError, ZeroColumnError.
SvdFactors onesided_jacobi_svd(const DenseMatrix& g, const JacobiConfig& cfg = {},
                               JacobiStats* stats = nullptr);

// Classical cyclic two-sided Jacobi for symmetric positive definite M.
// Diagonal entries are updated incrementally (m_ii -= t*m_ij, m_jj += t*m_ij,
// the cancellation-free form); a nonpositive diagonal raises
// NotPositiveDefiniteError.
EigFactors twosided_jacobi_eig(const DenseMatrix& m, const JacobiConfig& cfg = {},
                               JacobiStats* stats = nullptr);

}  // namespace mpsvd
