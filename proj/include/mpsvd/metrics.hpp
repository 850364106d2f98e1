// Measured error quantities and the matching a-priori bounds.
//
// Everything here evaluates at Higher precision so that measurement noise
// stays well below the quantities being measured.  The bound formulas take
// their epsilon constants from BoundParams; the defaults use the dimensional
// factors (n, n^2, sqrt(n)) that appear in the error analysis and are meant
// to be interpretable, not sharp.

#pragma once

#include <vector>

#include "mpsvd/jacobi.hpp"
#include "mpsvd/thinsvd.hpp"
#include "mpsvd/types.hpp"

namespace mpsvd {

struct BoundParams {
  double eps_M_h = 0.0;     // Gram formation at Higher
  double eps_eig_h = 0.0;   // eigensolver at Higher
  double eps_eigtol = 0.0;  // eigensolver relative stopping tolerance
  double eps_sqrt = 0.0;    // eigenvalue -> singular value square root
  double eps_V = 0.0;       // cast of V to Working
  double eps_U = 0.0;       // the U = A(V Sigma^-1) product
  double eps_chol_h = 0.0;  // Cholesky at Higher (GramCholSvd route)
  double eps_SVD = 0.0;     // Working-precision SVD of R (GramCholSvd route)

  // eps_M_h = eps_eig_h = eps_chol_h = n*u_h; eps_eigtol = eps_sqrt = eps_V =
  // eps_U = n*u; eps_SVD = n^2*u.
  static BoundParams defaults(index_t n);
};

struct TheoreticalBounds {
  double sv = 0.0;        // max relative singular value error
  double orth = 0.0;      // ||U^T U - I||_F
  double backward = 0.0;  // rowwise backward error
  double eps1 = 0.0;      // the first-order term the orth bound is built on
  bool assumption_ok = true;  // eps1 <= 1/2; bounds are vacuous otherwise
};

struct BackwardErrorReport {
  double max_rel = 0.0;
  index_t skipped_rows = 0;  // rows of A with exactly zero norm
};

// Everything the accuracy harness records for one solved instance.
struct MetricsReport {
  double max_rel_sv_err = 0.0;
  double orth_U = 0.0;
  double orth_V = 0.0;
  double rowwise_backward_max = 0.0;
  double kappa_B_realized = 0.0;
  double kappa_D = 0.0;
  double bound_sv = 0.0;
  double bound_orth = 0.0;
  double bound_backward = 0.0;
};

// max_i |computed_i - reference_i| / reference_i, evaluated at Higher.
// Throws InvalidArgument on length mismatch or a nonpositive reference entry.
double max_rel_sv_error(const std::vector<double>& computed,
                        const std::vector<double>& reference);

// max_i ||(U diag(sigma) V^T - A)(i,:)|| / ||A(i,:)|| with the residual formed
// at Higher precision.  Zero rows of A are skipped and counted.
BackwardErrorReport rowwise_backward_error(const DenseMatrix& a, const DenseMatrix& u,
                                           const std::vector<double>& sigma,
                                           const DenseMatrix& v);

// Bound formulas for the Gram-based thin SVD.  For GramCholSvd the
// eigensolver constants are first rewritten in terms of the Cholesky and
// Working-SVD constants (which introduces the kappa(B) factor that route
// pays); TwoSidedJacobi and OneSidedJacobiOnGram use the parameters as given.
TheoreticalBounds theoretical_bounds(const BoundParams& bp, index_t n, double kappa_b,
                                     EigensolverChoice variant);

// Oracle singular values: one-sided Jacobi at Higher precision on
// cast(A, Higher).  This is the reference every accuracy measurement
// compares against.
std::vector<double> reference_svd(const DenseMatrix& a, const JacobiConfig& cfg = {});

// sigma_max / sigma_min through reference_svd.
double estimate_kappa(const DenseMatrix& b);

}  // namespace mpsvd
