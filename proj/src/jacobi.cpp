#include "mpsvd/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mpsvd {

namespace {

template <typename T>
T scaled_norm_t(const T* x, index_t len) {
  T scale = T(0), ssq = T(1);
  for (index_t k = 0; k < len; ++k) {
    if (x[k] != T(0)) {
      const T ax = std::abs(x[k]);
      if (scale < ax) {
        const T r = scale / ax;
        ssq = T(1) + ssq * r * r;
        scale = ax;
      } else {
        const T r = ax / scale;
        ssq += r * r;
      }
    }
  }
  return scale * std::sqrt(ssq);
}

// Rotation from the standard stable parametrization: zeta = (b - a) / (2c),
// t = sign(zeta) / (|zeta| + sqrt(1 + zeta^2)), built with hypot so that
// zeta^2 cannot overflow.
template <typename T>
void make_rotation(T a, T b, T c, T& cs, T& sn) {
  const T zeta = (b - a) / (T(2) * c);
  const T t = (zeta >= T(0) ? T(1) : T(-1)) / (std::abs(zeta) + std::hypot(T(1), zeta));
  cs = T(1) / std::hypot(T(1), t);
  sn = cs * t;
}

template <typename T>
struct OnesidedResult {
  std::vector<T> x;  // rotated copy of G
  std::vector<T> v;
  std::vector<T> sigma;
};

template <typename T>
OnesidedResult<T> onesided_impl(const T* g, index_t m, index_t n, double tol,
                                int max_sweeps, JacobiStats* stats) {
  OnesidedResult<T> r;
  r.x.assign(g, g + static_cast<std::size_t>(m) * n);
  r.v.assign(static_cast<std::size_t>(n) * n, T(0));
  for (index_t i = 0; i < n; ++i) r.v[static_cast<std::size_t>(i) * n + i] = T(1);

  auto colx = [&](index_t j) { return r.x.data() + static_cast<std::size_t>(j) * m; };
  auto colv = [&](index_t j) { return r.v.data() + static_cast<std::size_t>(j) * n; };

  const T reltol = static_cast<T>(tol);
  double worst_ratio = 0.0;
  bool converged = false;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    worst_ratio = 0.0;
    for (index_t i = 0; i < n - 1; ++i) {
      for (index_t j = i + 1; j < n; ++j) {
        T* xi = colx(i);
        T* xj = colx(j);
        T a = T(0), b = T(0), c = T(0);
        for (index_t k = 0; k < m; ++k) {
          a += xi[k] * xi[k];
          b += xj[k] * xj[k];
          c += xi[k] * xj[k];
        }
        if (a == T(0)) throw ZeroColumnError(i + 1);
        if (b == T(0)) throw ZeroColumnError(j + 1);
        const T thresh = reltol * std::sqrt(a) * std::sqrt(b);
        worst_ratio = std::max(
            worst_ratio, static_cast<double>(std::abs(c)) /
                             (std::sqrt(static_cast<double>(a)) *
                              std::sqrt(static_cast<double>(b))));
        if (std::abs(c) <= thresh) continue;

        T cs, sn;
        make_rotation(a, b, c, cs, sn);
        for (index_t k = 0; k < m; ++k) {
          const T t1 = xi[k], t2 = xj[k];
          xi[k] = cs * t1 - sn * t2;
          xj[k] = sn * t1 + cs * t2;
        }
        T* vi = colv(i);
        T* vj = colv(j);
        for (index_t k = 0; k < n; ++k) {
          const T t1 = vi[k], t2 = vj[k];
          vi[k] = cs * t1 - sn * t2;
          vj[k] = sn * t1 + cs * t2;
        }
        rotated = true;
        if (stats) ++stats->rotations;
      }
    }
    if (stats) ++stats->sweeps;
    if (!rotated) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergenceError(max_sweeps, worst_ratio);

  r.sigma.resize(static_cast<std::size_t>(n));
  for (index_t j = 0; j < n; ++j) {
    const T s = scaled_norm_t(colx(j), m);
    if (s == T(0)) throw ZeroColumnError(j + 1);
    r.sigma[static_cast<std::size_t>(j)] = s;
  }
  return r;
}

// Stable descending order of `vals`; returns the permutation.
template <typename T>
std::vector<index_t> descending_perm(const std::vector<T>& vals) {
  std::vector<index_t> p(vals.size());
  std::iota(p.begin(), p.end(), index_t{0});
  std::stable_sort(p.begin(), p.end(), [&](index_t a, index_t b) {
    return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
  });
  return p;
}

}  // namespace

SvdFactors onesided_jacobi_svd(const DenseMatrix& g, const JacobiConfig& cfg,
                               JacobiStats* stats) {
  const index_t m = g.rows(), n = g.cols();
  if (m < n) throw InvalidArgument("onesided_jacobi_svd: rows < cols");
  if (n < 1) throw InvalidArgument("onesided_jacobi_svd: empty matrix");
  if (cfg.max_sweeps < 1) throw InvalidArgument("max_sweeps must be >= 1");
  const double tol =
      cfg.tol > 0.0 ? cfg.tol : static_cast<double>(n) * unit_roundoff(g.precision());
  if (stats) *stats = JacobiStats{0, 0, n * (n - 1) / 2};

  SvdFactors out{DenseMatrix(m, n, g.precision()), {}, DenseMatrix(n, n, g.precision()),
                 g.precision()};

  auto finish = [&](auto&& res) {
    using T = typename std::decay_t<decltype(res.x)>::value_type;
    const auto perm = descending_perm(res.sigma);
    out.sigma.resize(static_cast<std::size_t>(n));
    for (index_t jj = 0; jj < n; ++jj) {
      const index_t src = perm[static_cast<std::size_t>(jj)];
      const T s = res.sigma[static_cast<std::size_t>(src)];
      // Sign convention keyed on V's dominant entry.
      index_t imax = 0;
      T amax = T(-1);
      const T* vc = res.v.data() + static_cast<std::size_t>(src) * n;
      for (index_t i = 0; i < n; ++i) {
        if (std::abs(vc[i]) > amax) {
          amax = std::abs(vc[i]);
          imax = i;
        }
      }
      const T flip = vc[imax] < T(0) ? T(-1) : T(1);
      const T* xc = res.x.data() + static_cast<std::size_t>(src) * m;
      for (index_t i = 0; i < m; ++i)
        out.u.set(i, jj, static_cast<double>(flip * (xc[i] / s)));
      for (index_t i = 0; i < n; ++i)
        out.v.set(i, jj, static_cast<double>(flip * vc[i]));
      out.sigma[static_cast<std::size_t>(jj)] = static_cast<double>(s);
    }
  };

  if (g.precision() == Precision::Working)
    finish(onesided_impl(g.fptr(), m, n, tol, cfg.max_sweeps, stats));
  else
    finish(onesided_impl(g.dptr(), m, n, tol, cfg.max_sweeps, stats));
  return out;
}

namespace {

template <typename T>
struct TwosidedResult {
  std::vector<T> a;  // full symmetric working copy
  std::vector<T> v;
};

template <typename T>
TwosidedResult<T> twosided_impl(const T* m_in, index_t n, double tol,
                                int max_sweeps, JacobiStats* stats) {
  TwosidedResult<T> r;
  r.a.assign(m_in, m_in + static_cast<std::size_t>(n) * n);
  r.v.assign(static_cast<std::size_t>(n) * n, T(0));
  for (index_t i = 0; i < n; ++i) r.v[static_cast<std::size_t>(i) * n + i] = T(1);

  auto A = [&](index_t i, index_t j) -> T& {
    return r.a[static_cast<std::size_t>(j) * n + i];
  };

  for (index_t k = 0; k < n; ++k)
    if (!(A(k, k) > T(0))) throw NotPositiveDefiniteError(k + 1, A(k, k));

  const T reltol = static_cast<T>(tol);
  double worst_ratio = 0.0;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    worst_ratio = 0.0;
    for (index_t i = 0; i < n - 1; ++i) {
      for (index_t j = i + 1; j < n; ++j) {
        const T aii = A(i, i), ajj = A(j, j), aij = A(i, j);
        const T thresh = reltol * std::sqrt(aii) * std::sqrt(ajj);
        worst_ratio = std::max(worst_ratio,
                               std::abs(static_cast<double>(aij)) /
                                   std::sqrt(static_cast<double>(aii) *
                                             static_cast<double>(ajj)));
        if (std::abs(aij) <= thresh) continue;

        // tan of the annihilating rotation; same stable form as one-sided.
        const T zeta = (ajj - aii) / (T(2) * aij);
        const T t =
            (zeta >= T(0) ? T(1) : T(-1)) / (std::abs(zeta) + std::hypot(T(1), zeta));
        const T cs = T(1) / std::hypot(T(1), t);
        const T sn = cs * t;

        for (index_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const T aki = A(k, i), akj = A(k, j);
          const T ni = cs * aki - sn * akj;
          const T nj = sn * aki + cs * akj;
          A(k, i) = ni;
          A(i, k) = ni;
          A(k, j) = nj;
          A(j, k) = nj;
        }
        // Diagonal via the t*a_ij increment (avoids cancellation), off-pair
        // entry annihilated exactly.
        A(i, i) = aii - t * aij;
        A(j, j) = ajj + t * aij;
        A(i, j) = T(0);
        A(j, i) = T(0);
        if (!(A(i, i) > T(0))) throw NotPositiveDefiniteError(i + 1, A(i, i));
        if (!(A(j, j) > T(0))) throw NotPositiveDefiniteError(j + 1, A(j, j));

        T* vi = r.v.data() + static_cast<std::size_t>(i) * n;
        T* vj = r.v.data() + static_cast<std::size_t>(j) * n;
        for (index_t k = 0; k < n; ++k) {
          const T t1 = vi[k], t2 = vj[k];
          vi[k] = cs * t1 - sn * t2;
          vj[k] = sn * t1 + cs * t2;
        }
        rotated = true;
        if (stats) ++stats->rotations;
      }
    }
    if (stats) ++stats->sweeps;
    if (!rotated) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergenceError(max_sweeps, worst_ratio);
  return r;
}

}  // namespace

EigFactors twosided_jacobi_eig(const DenseMatrix& m, const JacobiConfig& cfg,
                               JacobiStats* stats) {
  const index_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("twosided_jacobi_eig: not square");
  if (n < 1) throw InvalidArgument("twosided_jacobi_eig: empty matrix");
  if (cfg.max_sweeps < 1) throw InvalidArgument("max_sweeps must be >= 1");
  const double tol =
      cfg.tol > 0.0 ? cfg.tol : static_cast<double>(n) * unit_roundoff(m.precision());
  if (stats) *stats = JacobiStats{0, 0, n * (n - 1) / 2};

  EigFactors out{DenseMatrix(n, n, m.precision()), {}, m.precision()};

  auto finish = [&](auto&& res) {
    using T = typename std::decay_t<decltype(res.a)>::value_type;
    std::vector<T> lam(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i)
      lam[static_cast<std::size_t>(i)] = res.a[static_cast<std::size_t>(i) * n + i];
    const auto perm = descending_perm(lam);
    out.lambda.resize(static_cast<std::size_t>(n));
    for (index_t jj = 0; jj < n; ++jj) {
      const index_t src = perm[static_cast<std::size_t>(jj)];
      const T* vc = res.v.data() + static_cast<std::size_t>(src) * n;
      index_t imax = 0;
      T amax = T(-1);
      for (index_t i = 0; i < n; ++i) {
        if (std::abs(vc[i]) > amax) {
          amax = std::abs(vc[i]);
          imax = i;
        }
      }
      const T flip = vc[imax] < T(0) ? T(-1) : T(1);
      for (index_t i = 0; i < n; ++i)
        out.v.set(i, jj, static_cast<double>(flip * vc[i]));
      out.lambda[static_cast<std::size_t>(jj)] =
          static_cast<double>(lam[static_cast<std::size_t>(src)]);
    }
  };

  if (m.precision() == Precision::Working)
    finish(twosided_impl(m.fptr(), n, tol, cfg.max_sweeps, stats));
  else
    finish(twosided_impl(m.dptr(), n, tol, cfg.max_sweeps, stats));
  return out;
}

}  // namespace mpsvd
