#include "mpsvd/metrics.hpp"

#include <cmath>
#include <string>

#include "mpsvd/dense.hpp"

namespace mpsvd {

BoundParams BoundParams::defaults(index_t n) {
  const double u = unit_roundoff(Precision::Working);
  const double uh = unit_roundoff(Precision::Higher);
  const double dn = static_cast<double>(n);
  BoundParams bp;
  bp.eps_M_h = dn * uh;
  bp.eps_eig_h = dn * uh;
  bp.eps_chol_h = dn * uh;
  bp.eps_eigtol = dn * u;
  bp.eps_sqrt = dn * u;
  bp.eps_V = dn * u;
  bp.eps_U = dn * u;
  bp.eps_SVD = dn * dn * u;
  return bp;
}

double max_rel_sv_error(const std::vector<double>& computed,
                        const std::vector<double>& reference) {
  if (computed.size() != reference.size())
    throw InvalidArgument("singular value arrays differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (!(reference[i] > 0.0))
      throw InvalidArgument("reference singular value " + std::to_string(i + 1) +
                            " is not positive");
    worst = std::max(worst, std::abs(computed[i] - reference[i]) / reference[i]);
  }
  return worst;
}

BackwardErrorReport rowwise_backward_error(const DenseMatrix& a, const DenseMatrix& u,
                                           const std::vector<double>& sigma,
                                           const DenseMatrix& v) {
  const index_t m = a.rows();
  const index_t n = a.cols();
  if (u.rows() != m || u.cols() != n || static_cast<index_t>(sigma.size()) != n ||
      v.rows() != n || v.cols() != n)
    throw InvalidArgument("factor shapes do not match A");

  const auto uh = cast(u, Precision::Higher);
  const auto vh = cast(v, Precision::Higher);
  const auto w = scale_columns(uh, DiagMatrix(sigma, Precision::Higher), false);
  const auto p = matmul(w, transpose(vh));

  BackwardErrorReport rep;
  for (index_t i = 0; i < m; ++i) {
    double res = 0.0;
    double row = 0.0;
    for (index_t j = 0; j < n; ++j) {
      const double d = p.get(i, j) - a.get(i, j);
      res += d * d;
      row += a.get(i, j) * a.get(i, j);
    }
    if (row == 0.0) {
      ++rep.skipped_rows;
      continue;
    }
    rep.max_rel = std::max(rep.max_rel, std::sqrt(res) / std::sqrt(row));
  }
  return rep;
}

TheoreticalBounds theoretical_bounds(const BoundParams& bp, index_t n, double kappa_b,
                                     EigensolverChoice variant) {
  const double dn = static_cast<double>(n);
  const double rn = std::sqrt(dn);
  const double k = kappa_b;

  double eps_eigtol = bp.eps_eigtol;
  double eps_eig_h = bp.eps_eig_h;
  double eps_sqrt = bp.eps_sqrt;
  if (variant == EigensolverChoice::GramCholSvd) {
    // The Cholesky route computes sigma directly (no square root step), and
    // its eigensolver constants come from the Cholesky residual and the
    // Working-precision SVD of R; the latter is where kappa(B) enters.
    const double u = unit_roundoff(Precision::Working);
    eps_sqrt = 0.0;
    eps_eig_h = 2.0 * dn * (1.0 + dn * bp.eps_M_h) * bp.eps_chol_h;
    eps_eigtol = 12.0 * (1.0 + dn * bp.eps_M_h) * (u + (1.0 + u) * bp.eps_SVD) * k;
  }

  const double gram_term = dn * dn * bp.eps_M_h + eps_eig_h;
  const double u_term = bp.eps_V + bp.eps_U * (1.0 + bp.eps_V);

  TheoreticalBounds b;
  b.eps1 = 2.0 * eps_eigtol + 2.0 * gram_term * k * k + 4.0 * dn * rn * u_term * k;
  b.assumption_ok = b.eps1 <= 0.5;
  b.sv = 2.0 * eps_sqrt + 2.0 * eps_eigtol + 4.0 * gram_term * k * k;
  b.orth = (2.0 * rn * eps_sqrt + dn * b.eps1) / (1.0 - 2.0 * eps_sqrt);
  b.backward = rn * u_term;
  return b;
}

std::vector<double> reference_svd(const DenseMatrix& a, const JacobiConfig& cfg) {
  return onesided_jacobi_svd(cast(a, Precision::Higher), cfg).sigma;
}

double estimate_kappa(const DenseMatrix& b) {
  const auto s = reference_svd(b);
  return s.front() / s.back();
}

}  // namespace mpsvd
