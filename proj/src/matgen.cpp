#include "mpsvd/matgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpsvd/dense.hpp"
#include "mpsvd/jacobi.hpp"

namespace mpsvd {

namespace {

constexpr double kUh = 0x1p-53;

// Compensated (Neumaier) dot product; absolute error is O(u_h) rather than
// O(m*u_h).  The equilibration bookkeeping needs this: its termination window
// is 4*u_h, far below the naive dot-product noise of a 1024-row column.
double dot_compensated(const double* x, const double* y, index_t m) {
  double s = 0.0, comp = 0.0;
  for (index_t i = 0; i < m; ++i) {
    const double term = x[i] * y[i];
    const double t = s + term;
    if (std::abs(s) >= std::abs(term))
      comp += (s - t) + term;
    else
      comp += (term - t) + s;
    s = t;
  }
  return s + comp;
}

double squared_norm_compensated(const double* x, index_t m) {
  return dot_compensated(x, x, m);
}

// tan of the rotation sending column p's squared norm to 1 + theta, where
// e_p, e_q are the current squared-norm deviations from 1 and c = b_p . b_q.
// Solves (e_q - theta) t^2 + 2 c t + (e_p - theta) = 0 by the anti-cancellation
// (Citardauq) form; callers only request targets with a non-negative
// discriminant, so the max() only absorbs rounding dust.
double rotation_tan(double e_p, double e_q, double c, double theta) {
  const double disc = c * c - (e_p - theta) * (e_q - theta);
  const double qq = -(c + std::copysign(std::sqrt(std::max(disc, 0.0)), c));
  if (qq == 0.0) return 0.0;  // c == 0 and p already on target
  return (e_p - theta) / qq;
}

}  // namespace

std::vector<double> diag_from_mode(const DiagMode& dm, index_t n, Rng& rng) {
  if (dm.mode < 1 || dm.mode > 5)
    throw InvalidArgument("diag mode must be in 1..5, got " +
                          std::to_string(dm.mode));
  if (!(dm.kappa >= 1.0))
    throw InvalidArgument("diag kappa must be >= 1");
  if (n < 1) throw InvalidArgument("diag length must be positive");
  if (n < 2 && (dm.mode == 3 || dm.mode == 4))
    throw InvalidArgument("modes 3 and 4 need n >= 2");

  std::vector<double> d(static_cast<std::size_t>(n));
  const double inv = 1.0 / dm.kappa;
  switch (dm.mode) {
    case 1:
      d[0] = 1.0;
      for (index_t i = 1; i < n; ++i) d[static_cast<std::size_t>(i)] = inv;
      break;
    case 2:
      for (index_t i = 0; i < n - 1; ++i) d[static_cast<std::size_t>(i)] = 1.0;
      d[static_cast<std::size_t>(n - 1)] = inv;
      break;
    case 3:
      for (index_t i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] =
            std::pow(dm.kappa, -static_cast<double>(i) / static_cast<double>(n - 1));
      break;
    case 4:
      // 1 - (i-1)/(n-1)*(1-1/kappa), evaluated as ((n-i) + (i-1)/kappa)/(n-1)
      // so the smallest entry keeps full relative accuracy (the textbook form
      // cancels near 1/kappa and loses u_h*kappa relative).
      for (index_t i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] =
            (static_cast<double>(n - 1 - i) + static_cast<double>(i) * inv) /
            static_cast<double>(n - 1);
      break;
    case 5:
      for (index_t i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] = std::pow(dm.kappa, -rng.uniform_open01());
      break;
  }
  return d;
}

DenseMatrix haar_orthonormal(index_t m, index_t n, Rng& rng) {
  if (m < n || n < 1) throw InvalidArgument("haar_orthonormal: need m >= n >= 1");
  DenseMatrix g(m, n, Precision::Higher);
  for (index_t j = 0; j < n; ++j)
    for (index_t i = 0; i < m; ++i) g.set(i, j, rng.gaussian());
  auto qr = householder_qr(g);
  for (index_t j = 0; j < n; ++j)
    if (qr.r.get(j, j) < 0.0)
      for (index_t i = 0; i < m; ++i) qr.q.set(i, j, -qr.q.get(i, j));
  // O(1) is just {+1,-1}; pin the scalar case to +1 so it is seed-independent.
  // A global sign is gauge here (it never changes norms or products built
  // from this factor), so Haar-correctness of the n >= 2 cases is unaffected.
  if (m == 1 && n == 1) qr.q.set(0, 0, 1.0);
  return qr.q;
}

DenseMatrix unit_norm_column_matrix(const std::vector<double>& sigma, index_t m,
                                    Rng& rng, EquilibrationStats* stats) {
  const index_t n = static_cast<index_t>(sigma.size());
  if (n < 1) throw InvalidArgument("unit_norm_column_matrix: empty sigma");
  if (m < n) throw InvalidArgument("unit_norm_column_matrix: m < n");
  double ss = 0.0;
  for (double s : sigma) {
    if (!(s > 0.0)) throw InvalidArgument("sigma entries must be positive");
    ss += s * s;
  }
  const double gamma = std::sqrt(static_cast<double>(n) / ss);
  std::vector<double> scaled(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    scaled[i] = gamma * sigma[i];
    if (scaled[i] * scaled[i] > static_cast<double>(n))
      throw InfeasibleError("renormalized sigma exceeds the unit-column budget");
  }

  auto rng_w1 = rng.substream(0);
  auto rng_w2 = rng.substream(1);
  const auto w1 = haar_orthonormal(m, n, rng_w1);
  const auto w2 = haar_orthonormal(n, n, rng_w2);
  DenseMatrix b =
      matmul(scale_columns(w1, DiagMatrix(scaled, Precision::Higher), false),
             transpose(w2));

  // Global rescale so the *measured* squared norms sum to n: without this the
  // factor rounding above leaves a trace offset that no rotation can remove
  // (rotations conserve it), which would make the 4*u_h window unreachable.
  std::vector<double> q(static_cast<std::size_t>(n));
  double trace = 0.0;
  for (index_t j = 0; j < n; ++j) {
    q[static_cast<std::size_t>(j)] =
        squared_norm_compensated(b.dptr() + static_cast<std::size_t>(j) * m, m);
    trace += q[static_cast<std::size_t>(j)];
  }
  const double rho = std::sqrt(static_cast<double>(n) / trace);
  for (index_t j = 0; j < n; ++j) {
    double* col = b.dptr() + static_cast<std::size_t>(j) * m;
    for (index_t i = 0; i < m; ++i) col[i] *= rho;
  }

  // Deviations e_j = ||b_j||^2 - 1, re-measured after the rescale.  The
  // subtraction is exact for values this close to 1, so the bookkeeping below
  // carries absolute O(u_h) accuracy.
  std::vector<double> e(static_cast<std::size_t>(n));
  const auto measure = [&] {
    for (index_t j = 0; j < n; ++j)
      e[static_cast<std::size_t>(j)] =
          squared_norm_compensated(b.dptr() + static_cast<std::size_t>(j) * m,
                                   m) -
          1.0;
  };
  measure();

  EquilibrationStats local;
  EquilibrationStats& st = stats ? *stats : local;
  st = EquilibrationStats{};

  const double tol = 4.0 * kUh;

  // Rotations conserve the mean deviation, so a mean outside the window makes
  // termination impossible.  rho is one rounded scalar and can land the mean
  // a few u_h off; polish with a second rescale only when actually blocked.
  for (int pass = 0; pass < 3; ++pass) {
    double sum = 0.0;
    for (double ej : e) sum += ej;
    if (std::abs(sum) <= tol * static_cast<double>(n)) break;
    const double rho2 = std::sqrt(1.0 / (1.0 + sum / static_cast<double>(n)));
    for (index_t j = 0; j < n; ++j) {
      double* col = b.dptr() + static_cast<std::size_t>(j) * m;
      for (index_t i = 0; i < m; ++i) col[i] *= rho2;
    }
    measure();
  }

  // A single column has no rotation partner; polish it by direct rescaling
  // (each pass lands within a few u_h, so this converges immediately).
  if (n == 1) {
    for (int pass = 0; pass < 4 && std::abs(e[0]) > tol; ++pass) {
      const double s = 1.0 / std::sqrt(1.0 + e[0]);
      double* col = b.dptr();
      for (index_t i = 0; i < m; ++i) col[i] *= s;
      e[0] = squared_norm_compensated(col, m) - 1.0;
    }
    if (std::abs(e[0]) > tol)
      throw InfeasibleError("single-column normalization did not converge");
    st.max_abs_deviation = std::abs(e[0]);
    return b;
  }

  const int max_rot = static_cast<int>(n) * static_cast<int>(n);
  auto rotate_pair = [&](index_t p, index_t qcol, double theta) {
    double* bp = b.dptr() + static_cast<std::size_t>(p) * m;
    double* bq = b.dptr() + static_cast<std::size_t>(qcol) * m;
    const double c = dot_compensated(bp, bq, m);
    const double t = rotation_tan(e[static_cast<std::size_t>(p)],
                                  e[static_cast<std::size_t>(qcol)], c, theta);
    const double cs = 1.0 / std::hypot(1.0, t);
    const double sn = cs * t;
    for (index_t i = 0; i < m; ++i) {
      const double t1 = bp[i], t2 = bq[i];
      bp[i] = cs * t1 + sn * t2;
      bq[i] = -sn * t1 + cs * t2;
    }
    const double pair_sum =
        e[static_cast<std::size_t>(p)] + e[static_cast<std::size_t>(qcol)];
    e[static_cast<std::size_t>(p)] = theta;
    e[static_cast<std::size_t>(qcol)] = pair_sum - theta;
    ++st.rotations;
  };

  while (true) {
    index_t pmax = 0, pmin = 0;
    for (index_t j = 1; j < n; ++j) {
      if (e[static_cast<std::size_t>(j)] > e[static_cast<std::size_t>(pmax)])
        pmax = j;
      if (e[static_cast<std::size_t>(j)] < e[static_cast<std::size_t>(pmin)])
        pmin = j;
    }
    const double emax = e[static_cast<std::size_t>(pmax)];
    const double emin = e[static_cast<std::size_t>(pmin)];
    if (emax <= tol && emin >= -tol) break;
    if (st.rotations >= max_rot)
      throw InfeasibleError(
          "column equilibration did not reach the 4*u_h window in n^2 "
          "rotations");
    if (emax > 0.0 && emin < 0.0) {
      // Opposite signs: send the larger deviation exactly to zero (the
      // discriminant is nonnegative because (e_p)(e_q) <= 0).  Each such step
      // moves one column out of its sign class, so this phase is O(n).
      if (emax >= -emin)
        rotate_pair(pmax, pmin, 0.0);
      else
        rotate_pair(pmin, pmax, 0.0);
    } else {
      // One-sided residue: meet at the pair midpoint, which is always
      // reachable and contracts the spread geometrically.
      rotate_pair(pmax, pmin, 0.5 * (emax + emin));
    }
  }
  st.max_abs_deviation = 0.0;
  for (double ej : e) st.max_abs_deviation = std::max(st.max_abs_deviation, std::abs(ej));
  return b;
}

std::pair<int, int> matrix_id_to_modes(int matrix_id) {
  static constexpr std::pair<int, int> kTable[16] = {
      {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 2},
      {3, 4}, {3, 5}, {4, 2}, {4, 3}, {4, 5}, {5, 2}, {5, 3}, {5, 4}};
  if (matrix_id < 1 || matrix_id > 16)
    throw InvalidArgument("matrix id must be in 1..16, got " +
                          std::to_string(matrix_id));
  return kTable[matrix_id - 1];
}

GeneratedProblem build_problem(const TestMatrixSpec& spec) {
  if (spec.m < spec.n || spec.n < 1)
    throw InvalidArgument("build_problem: need m >= n >= 1");
  const auto [mode_d, mode_sigma] = matrix_id_to_modes(spec.matrix_id);

  Rng base(spec.seed);
  auto rng_d = base.substream(2);
  auto rng_sigma = base.substream(3);
  auto d = diag_from_mode({mode_d, spec.kappa_d}, spec.n, rng_d);
  auto sigma_b = diag_from_mode({mode_sigma, spec.kappa_b}, spec.n, rng_sigma);

  GeneratedProblem out;
  out.spec = spec;
  out.b = unit_norm_column_matrix(sigma_b, spec.m, base);
  out.d = DiagMatrix(std::move(d), Precision::Higher);
  const auto [smin, smax] =
      std::minmax_element(sigma_b.begin(), sigma_b.end());
  out.realized_kappa_b = *smax / *smin;

  const auto bd = scale_columns(out.b, out.d, false);
  out.a = cast(bd, Precision::Working);
  out.sigma_ref = onesided_jacobi_svd(bd).sigma;
  return out;
}

}  // namespace mpsvd
