#include "mpsvd/thinsvd.hpp"

#include <cfloat>
#include <chrono>
#include <cmath>

#include "mpsvd/dense.hpp"
#include "mpsvd/parallel_gram.hpp"

namespace mpsvd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Reject singular values whose Working-precision image is below the smallest
// normal number: 1/sigma (needed for U) would overflow or lose all accuracy.
void check_sigma_normal(const std::vector<double>& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (static_cast<float>(sigma[i]) < FLT_MIN)
      throw TinySingularValueError(static_cast<index_t>(i) + 1, sigma[i]);
}

std::vector<double> to_working_values(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<double>(static_cast<float>(v[i]));
  return out;
}

}  // namespace

std::pair<DenseMatrix, std::vector<double>> gram_chol_eigensolver(
    const DenseMatrix& m_h, const JacobiConfig& cfg) {
  if (m_h.precision() != Precision::Higher)
    throw InvalidArgument("gram_chol_eigensolver expects a Higher-precision matrix");
  if (m_h.rows() != m_h.cols())
    throw InvalidArgument("gram_chol_eigensolver expects a square matrix");
  const auto r_h = cholesky(m_h);
  const auto r = cast(r_h, Precision::Working);
  auto f = onesided_jacobi_svd(r, cfg);  // U_R is discarded
  return {std::move(f.v), std::move(f.sigma)};
}

ThinSvdResult mp_thin_svd(const DenseMatrix& a, EigensolverChoice choice,
                          const JacobiConfig& cfg, int threads) {
  const auto t0 = Clock::now();
  if (a.precision() != Precision::Working)
    throw InvalidArgument("mp_thin_svd expects a Working-precision matrix");
  const index_t m = a.rows(), n = a.cols();
  if (m < n || n < 1) throw InvalidArgument("mp_thin_svd: need m >= n >= 1");
  if (threads < 1) throw InvalidArgument("mp_thin_svd: thread count must be positive");

  ThinSvdResult out;
  out.eigensolver = choice;

  const auto a_h = cast(a, Precision::Higher);

  // Gram phase.  The block granularity is fixed (not tied to the worker
  // count) so every thread count reduces in the same tree order and produces
  // the same bits.
  const index_t blocks = std::min<index_t>(16, m);
  GramRunStats gstats;
  const auto tg = Clock::now();
  const auto m_h = partitioned_gram(a_h, std::min<index_t>(threads, m), blocks,
                                    &gstats);
  out.times.gram = seconds_since(tg);
  out.gram_sync_events = gstats.sync_events;
  out.gram_blocks = gstats.blocks;

  // Spectral phase, including the eigenvalue -> singular value map and the
  // casts down to Working precision.
  const auto te = Clock::now();
  DenseMatrix v(n, n, Precision::Working);
  std::vector<double> sigma;
  switch (choice) {
    case EigensolverChoice::TwoSidedJacobi: {
      const auto eig = twosided_jacobi_eig(m_h, cfg);
      sigma.resize(eig.lambda.size());
      for (std::size_t i = 0; i < sigma.size(); ++i)
        sigma[i] = std::sqrt(eig.lambda[i]);
      sigma = to_working_values(sigma);
      v = cast(eig.v, Precision::Working);
      break;
    }
    case EigensolverChoice::GramCholSvd: {
      auto [vw, sw] = gram_chol_eigensolver(m_h, cfg);
      v = std::move(vw);
      sigma = std::move(sw);  // already Working-precision values
      break;
    }
    case EigensolverChoice::OneSidedJacobiOnGram: {
      const auto f = onesided_jacobi_svd(m_h, cfg);
      sigma.resize(f.sigma.size());
      for (std::size_t i = 0; i < sigma.size(); ++i)
        sigma[i] = std::sqrt(f.sigma[i]);  // sigma(M) are the eigenvalues
      sigma = to_working_values(sigma);
      v = cast(f.v, Precision::Working);
      break;
    }
  }
  check_sigma_normal(sigma);
  out.times.eigen = seconds_since(te);

  // U = A * (V * Sigma^-1), Sigma applied as a column scaling first.
  const auto tu = Clock::now();
  const auto v_scaled =
      scale_columns(v, DiagMatrix(sigma, Precision::Working), true);
  out.factors.u = matmul(a, v_scaled);
  out.times.compute_u = seconds_since(tu);

  out.factors.sigma = std::move(sigma);
  out.factors.v = std::move(v);
  out.factors.precision = Precision::Working;
  out.times.total = seconds_since(t0);
  out.times.overlap =
      out.times.total - out.times.gram - out.times.eigen - out.times.compute_u;
  return out;
}

CholQrFactors mp_cholesky_qr(const DenseMatrix& a) {
  if (a.precision() != Precision::Working)
    throw InvalidArgument("mp_cholesky_qr expects a Working-precision matrix");
  const index_t m = a.rows(), n = a.cols();
  if (m < n || n < 1) throw InvalidArgument("mp_cholesky_qr: need m >= n >= 1");

  const auto a_h = cast(a, Precision::Higher);
  const auto r_h = cholesky(gram(a_h));
  auto r = cast(r_h, Precision::Working);

  // Q(i,:) * R = A(i,:) row by row; vectorized over columns so that every
  // row sees the textbook forward-substitution order k = 0..j-1 then the
  // divide, all at Working precision.
  DenseMatrix q(m, n, Precision::Working);
  const float* ap = a.fptr();
  float* qp = q.fptr();
  for (index_t j = 0; j < n; ++j) {
    float* qj = qp + static_cast<std::size_t>(j) * m;
    const float* aj = ap + static_cast<std::size_t>(j) * m;
    for (index_t i = 0; i < m; ++i) qj[i] = aj[i];
    for (index_t k = 0; k < j; ++k) {
      const float rkj = static_cast<float>(r.get(k, j));
      const float* qk = qp + static_cast<std::size_t>(k) * m;
      for (index_t i = 0; i < m; ++i) qj[i] -= qk[i] * rkj;
    }
    const float rjj = static_cast<float>(r.get(j, j));
    for (index_t i = 0; i < m; ++i) qj[i] /= rjj;
  }
  return {std::move(q), std::move(r)};
}

ThinSvdResult qr_thin_svd_baseline(const DenseMatrix& a,
                                   const JacobiConfig& cfg) {
  const auto t0 = Clock::now();
  if (a.precision() != Precision::Working)
    throw InvalidArgument("qr_thin_svd_baseline expects a Working-precision matrix");
  if (a.rows() < a.cols() || a.cols() < 1)
    throw InvalidArgument("qr_thin_svd_baseline: need m >= n >= 1");

  ThinSvdResult out;
  out.qr_baseline = true;

  const auto qr = householder_qr(a);  // lands in overlap

  const auto te = Clock::now();
  auto f = onesided_jacobi_svd(qr.r, cfg);
  out.times.eigen = seconds_since(te);

  const auto tu = Clock::now();
  out.factors.u = matmul(qr.q, f.u);
  out.times.compute_u = seconds_since(tu);

  out.factors.sigma = std::move(f.sigma);
  out.factors.v = std::move(f.v);
  out.factors.precision = Precision::Working;
  out.times.total = seconds_since(t0);
  out.times.overlap =
      out.times.total - out.times.eigen - out.times.compute_u;
  return out;
}

}  // namespace mpsvd
