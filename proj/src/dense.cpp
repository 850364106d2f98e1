#include "mpsvd/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace mpsvd {

namespace {

// Rows per tile in the Gram kernel.  Tiling only changes the memory access
// pattern: the per-entry accumulator is carried across tiles, so the addition
// order stays "ascending row index" and results are bitwise identical to an
// untiled dot product.
constexpr index_t kGramRowTile = 2048;

template <typename T>
void gram_impl(const T* a, index_t m, index_t n, T* g) {
  for (index_t kb = 0; kb < m; kb += kGramRowTile) {
    const index_t ke = std::min(m, kb + kGramRowTile);
    for (index_t j = 0; j < n; ++j) {
      const T* cj = a + static_cast<std::size_t>(j) * m;
      for (index_t i = 0; i <= j; ++i) {
        const T* ci = a + static_cast<std::size_t>(i) * m;
        T acc = g[static_cast<std::size_t>(j) * n + i];
        for (index_t k = kb; k < ke; ++k) acc += ci[k] * cj[k];
        g[static_cast<std::size_t>(j) * n + i] = acc;
      }
    }
  }
  // Mirror the strict upper triangle; exact symmetry by construction.
  for (index_t j = 0; j < n; ++j)
    for (index_t i = 0; i < j; ++i)
      g[static_cast<std::size_t>(i) * n + j] =
          g[static_cast<std::size_t>(j) * n + i];
}

template <typename T>
void cholesky_impl(const T* m, index_t n, T* r) {
  for (index_t k = 0; k < n; ++k) {
    T d = m[static_cast<std::size_t>(k) * n + k];
    for (index_t i = 0; i < k; ++i) {
      const T rik = r[static_cast<std::size_t>(k) * n + i];
      d -= rik * rik;
    }
    if (!(d > T(0)))
      throw NotPositiveDefiniteError(k + 1, static_cast<double>(d));
    const T rkk = std::sqrt(d);
    r[static_cast<std::size_t>(k) * n + k] = rkk;
    for (index_t j = k + 1; j < n; ++j) {
      T s = m[static_cast<std::size_t>(j) * n + k];
      for (index_t i = 0; i < k; ++i)
        s -= r[static_cast<std::size_t>(k) * n + i] *
             r[static_cast<std::size_t>(j) * n + i];
      r[static_cast<std::size_t>(j) * n + k] = s / rkk;
    }
  }
}

// One-pass max-scaled column norm (the LAPACK xNRM2 recurrence): keeps
// ssq * scale^2 == sum of squares without ever forming a square that can
// overflow, for entries up to max/sqrt(m).
template <typename T>
T scaled_norm(const T* x, index_t len) {
  T scale = T(0);
  T ssq = T(1);
  for (index_t k = 0; k < len; ++k) {
    if (x[k] != T(0)) {
      const T ax = std::abs(x[k]);
      if (scale < ax) {
        const T ratio = scale / ax;
        ssq = T(1) + ssq * ratio * ratio;
        scale = ax;
      } else {
        const T ratio = ax / scale;
        ssq += ratio * ratio;
      }
    }
  }
  return scale * std::sqrt(ssq);
}

template <typename T>
void matmul_impl(const T* a, index_t m, index_t k, const T* b, index_t p,
                 T* c) {
  // jli order: each C(i,j) accumulates over ascending l, and the i loop
  // vectorizes without reassociation.
  for (index_t j = 0; j < p; ++j) {
    T* cj = c + static_cast<std::size_t>(j) * m;
    for (index_t l = 0; l < k; ++l) {
      const T blj = b[static_cast<std::size_t>(j) * k + l];
      const T* al = a + static_cast<std::size_t>(l) * m;
      for (index_t i = 0; i < m; ++i) cj[i] += al[i] * blj;
    }
  }
}

template <typename T>
void householder_qr_impl(const T* a_in, index_t m, index_t n, T* q, T* r) {
  std::vector<T> x(a_in, a_in + static_cast<std::size_t>(m) * n);
  std::vector<T> tau(static_cast<std::size_t>(n));

  auto X = [&](index_t i, index_t j) -> T& {
    return x[static_cast<std::size_t>(j) * m + i];
  };

  for (index_t k = 0; k < n; ++k) {
    const T nrm = scaled_norm(&X(k, k), m - k);
    if (nrm == T(0)) throw ZeroColumnError(k + 1);
    const T alpha = X(k, k);
    const T beta = -std::copysign(nrm, alpha);
    tau[k] = (beta - alpha) / beta;
    const T inv = T(1) / (alpha - beta);  // alpha and -beta share sign
    for (index_t i = k + 1; i < m; ++i) X(i, k) *= inv;
    X(k, k) = beta;

    for (index_t j = k + 1; j < n; ++j) {
      T s = X(k, j);
      for (index_t i = k + 1; i < m; ++i) s += X(i, k) * X(i, j);
      s *= tau[k];
      X(k, j) -= s;
      for (index_t i = k + 1; i < m; ++i) X(i, j) -= s * X(i, k);
    }
  }

  for (index_t j = 0; j < n; ++j)
    for (index_t i = 0; i < n; ++i)
      r[static_cast<std::size_t>(j) * n + i] = i <= j ? X(i, j) : T(0);

  // Accumulate the thin Q by applying reflectors backwards to I(m,n).
  for (index_t j = 0; j < n; ++j)
    for (index_t i = 0; i < m; ++i)
      q[static_cast<std::size_t>(j) * m + i] = (i == j) ? T(1) : T(0);
  for (index_t k = n - 1; k >= 0; --k) {
    for (index_t j = k; j < n; ++j) {
      T* qj = q + static_cast<std::size_t>(j) * m;
      T s = qj[k];
      for (index_t i = k + 1; i < m; ++i) s += X(i, k) * qj[i];
      s *= tau[k];
      qj[k] -= s;
      for (index_t i = k + 1; i < m; ++i) qj[i] -= s * X(i, k);
    }
  }
}

}  // namespace

DenseMatrix cast(const DenseMatrix& a, Precision target) {
  const index_t m = a.rows(), n = a.cols();
  DenseMatrix out(m, n, target);
  if (a.precision() == target) {
    for (index_t j = 0; j < n; ++j)
      for (index_t i = 0; i < m; ++i) out.set(i, j, a.get(i, j));
    return out;
  }
  if (target == Precision::Higher) {
    // binary32 -> binary64 is exact.
    const float* src = a.fptr();
    double* dst = out.dptr();
    for (index_t k = 0; k < a.size(); ++k) dst[k] = src[k];
    return out;
  }
  const double* src = a.dptr();
  float* dst = out.fptr();
  constexpr double kMaxWorking = std::numeric_limits<float>::max();
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i < m; ++i) {
      const double v = src[static_cast<std::size_t>(j) * m + i];
      if (!std::isfinite(v))
        throw InvalidArgument("non-finite entry (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ") in cast");
      if (std::abs(v) > kMaxWorking) throw CastOverflowError(i + 1, j + 1, v);
      dst[static_cast<std::size_t>(j) * m + i] = static_cast<float>(v);
    }
  }
  return out;
}

DenseMatrix gram(const DenseMatrix& a) {
  const index_t n = a.cols();
  DenseMatrix g(n, n, a.precision());
  if (a.precision() == Precision::Working)
    gram_impl(a.fptr(), a.rows(), n, g.fptr());
  else
    gram_impl(a.dptr(), a.rows(), n, g.dptr());
  return g;
}

DenseMatrix cholesky(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("cholesky: matrix not square");
  DenseMatrix r(m.rows(), m.rows(), m.precision());
  if (m.precision() == Precision::Working)
    cholesky_impl(m.fptr(), m.rows(), r.fptr());
  else
    cholesky_impl(m.dptr(), m.rows(), r.dptr());
  return r;
}

DiagMatrix col_norms(const DenseMatrix& a) {
  const index_t m = a.rows(), n = a.cols();
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (index_t j = 0; j < n; ++j) {
    double nrm;
    if (a.precision() == Precision::Working)
      nrm = scaled_norm(a.fptr() + static_cast<std::size_t>(j) * m, m);
    else
      nrm = scaled_norm(a.dptr() + static_cast<std::size_t>(j) * m, m);
    if (nrm == 0.0) throw ZeroColumnError(j + 1);
    norms[static_cast<std::size_t>(j)] = nrm;
  }
  return DiagMatrix(std::move(norms), a.precision());
}

DenseMatrix scale_columns(const DenseMatrix& a, const DiagMatrix& s,
                          bool invert) {
  const index_t m = a.rows(), n = a.cols();
  if (s.size() != n)
    throw InvalidArgument("scale_columns: diagonal size mismatch");
  DenseMatrix out(m, n, a.precision());
  if (a.precision() == Precision::Working) {
    const float* src = a.fptr();
    float* dst = out.fptr();
    for (index_t j = 0; j < n; ++j) {
      const float sj = static_cast<float>(s.entries[static_cast<std::size_t>(j)]);
      if (invert && sj == 0.0f) throw ZeroDivisorError(j + 1);
      const float* cs = src + static_cast<std::size_t>(j) * m;
      float* cd = dst + static_cast<std::size_t>(j) * m;
      if (invert)
        for (index_t i = 0; i < m; ++i) cd[i] = cs[i] / sj;
      else
        for (index_t i = 0; i < m; ++i) cd[i] = cs[i] * sj;
    }
  } else {
    const double* src = a.dptr();
    double* dst = out.dptr();
    for (index_t j = 0; j < n; ++j) {
      const double sj = s.entries[static_cast<std::size_t>(j)];
      if (invert && sj == 0.0) throw ZeroDivisorError(j + 1);
      const double* cs = src + static_cast<std::size_t>(j) * m;
      double* cd = dst + static_cast<std::size_t>(j) * m;
      if (invert)
        for (index_t i = 0; i < m; ++i) cd[i] = cs[i] / sj;
      else
        for (index_t i = 0; i < m; ++i) cd[i] = cs[i] * sj;
    }
  }
  return out;
}

double orth_error(const DenseMatrix& q) {
  const index_t m = q.rows(), n = q.cols();
  if (m < n) throw InvalidArgument("orth_error: rows < cols");
  double sum = 0.0;
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i <= j; ++i) {
      double dot = 0.0;
      if (q.precision() == Precision::Working) {
        const float* ci = q.fptr() + static_cast<std::size_t>(i) * m;
        const float* cj = q.fptr() + static_cast<std::size_t>(j) * m;
        for (index_t k = 0; k < m; ++k)
          dot += static_cast<double>(ci[k]) * static_cast<double>(cj[k]);
      } else {
        const double* ci = q.dptr() + static_cast<std::size_t>(i) * m;
        const double* cj = q.dptr() + static_cast<std::size_t>(j) * m;
        for (index_t k = 0; k < m; ++k) dot += ci[k] * cj[k];
      }
      const double d = dot - (i == j ? 1.0 : 0.0);
      sum += (i == j) ? d * d : 2.0 * d * d;
    }
  }
  return std::sqrt(sum);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.precision() != b.precision())
    throw InvalidArgument("matmul: mixed precisions");
  if (a.cols() != b.rows()) throw InvalidArgument("matmul: shape mismatch");
  DenseMatrix c(a.rows(), b.cols(), a.precision());
  if (a.precision() == Precision::Working)
    matmul_impl(a.fptr(), a.rows(), a.cols(), b.fptr(), b.cols(), c.fptr());
  else
    matmul_impl(a.dptr(), a.rows(), a.cols(), b.dptr(), b.cols(), c.dptr());
  return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows(), a.precision());
  for (index_t j = 0; j < a.cols(); ++j)
    for (index_t i = 0; i < a.rows(); ++i) t.set(j, i, a.get(i, j));
  return t;
}

QrFactors householder_qr(const DenseMatrix& a) {
  const index_t m = a.rows(), n = a.cols();
  if (m < n) throw InvalidArgument("householder_qr: rows < cols");
  QrFactors f{DenseMatrix(m, n, a.precision()),
              DenseMatrix(n, n, a.precision())};
  if (a.precision() == Precision::Working)
    householder_qr_impl(a.fptr(), m, n, f.q.fptr(), f.r.fptr());
  else
    householder_qr_impl(a.dptr(), m, n, f.q.dptr(), f.r.dptr());
  return f;
}

}  // namespace mpsvd
