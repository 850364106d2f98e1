// Mixed precision thin SVD and friends.
//
// mp_thin_svd: form the Gram matrix of A at Higher precision, take a spectral
// decomposition there (three interchangeable eigensolvers), map eigenvalues
// to singular values, and recover U at Working precision from A*(V*Sigma^-1)
// with Sigma^-1 applied as a column scaling of V before the single m x n
// product.  The classic QR-then-Jacobi route is provided as the comparison
// baseline, and the same Gram+Cholesky machinery powers a mixed precision
// Cholesky QR.

#pragma once

#include <utility>
#include <vector>

#include "mpsvd/jacobi.hpp"
#include "mpsvd/types.hpp"

namespace mpsvd {

enum class EigensolverChoice {
  TwoSidedJacobi,        // two-sided Jacobi on the Gram matrix, all at Higher
  GramCholSvd,           // Higher Cholesky, then Working one-sided Jacobi of R
  OneSidedJacobiOnGram,  // one-sided Jacobi at Higher with the Gram matrix as
                         // the square input; its singular values are the
                         // eigenvalues
};

// Wall-clock phase breakdown (seconds).  gram/eigen/compute_u are measured
// directly; overlap is the remainder (casts, checks, assembly, and for the
// QR baseline the QR factorization itself), so the four always partition
// total and every term is nonnegative by construction.
struct PhaseTimes {
  double gram = 0.0;
  double eigen = 0.0;
  double compute_u = 0.0;
  double overlap = 0.0;
  double total = 0.0;
};

struct ThinSvdResult {
  SvdFactors factors;  // Working precision
  EigensolverChoice eigensolver = EigensolverChoice::TwoSidedJacobi;
  bool qr_baseline = false;
  PhaseTimes times;
  int gram_sync_events = 0;  // 0 for the QR baseline (no Gram phase)
  index_t gram_blocks = 0;
};

// A must be Working precision with m >= n and full column rank.  threads
// selects the Gram-phase worker count; the Gram block granularity is pinned
// (min(16, m)) so the numerical result is bitwise identical for any thread
// count.  Throws TinySingularValueError if a computed singular value falls
// below the smallest normal Working-precision number (its reciprocal would
// overflow), and propagates solver errors.  Note the GramCholSvd route runs
// its SVD at Working precision, where such a column's norm-squared is already
// zero; the kernel's ZeroColumnError is what propagates there.
ThinSvdResult mp_thin_svd(const DenseMatrix& a, EigensolverChoice choice,
                          const JacobiConfig& cfg = {}, int threads = 1);

// The GramCholSvd eigensolver on its own: M_h symmetric positive definite at
// Higher precision; returns V (Working) and the singular values of
// cast(cholesky(M_h), Working) - whose squares approximate eig(M_h).
std::pair<DenseMatrix, std::vector<double>> gram_chol_eigensolver(
    const DenseMatrix& m_h, const JacobiConfig& cfg = {});

struct CholQrFactors {
  DenseMatrix q;
  DenseMatrix r;
};

// Gram and Cholesky at Higher precision, R cast to Working, then every row
// of Q obtained from Q(i,:)*R = A(i,:) by forward substitution at Working
// precision.
CholQrFactors mp_cholesky_qr(const DenseMatrix& a);

// Householder QR at Working precision, one-sided Jacobi of R, U = Q*U_R.
ThinSvdResult qr_thin_svd_baseline(const DenseMatrix& a,
                                   const JacobiConfig& cfg = {});

}  // namespace mpsvd
