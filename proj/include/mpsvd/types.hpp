// mpsvd: mixed precision thin SVD for tall-and-skinny matrices.
//
// Precision tags, dense/diagonal matrix storage, and the error types shared
// by every kernel.  Matrices are column-major and carry their precision at
// runtime; arithmetic is genuinely performed in the tagged precision, not
// merely rounded afterwards.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpsvd {

using index_t = std::int64_t;

// Working = IEEE binary32 (u = 2^-24), Higher = IEEE binary64 (u_h = 2^-53).
enum class Precision { Working, Higher };

constexpr double unit_roundoff(Precision p) {
  return p == Precision::Working ? 0x1p-24 : 0x1p-53;
}

constexpr const char* precision_tag(Precision p) {
  return p == Precision::Working ? "f32" : "f64";
}

// ---------------------------------------------------------------------------
// Errors.  Indices reported in error payloads are 1-based (pivot 1 is the
// first diagonal entry), matching the usual factorization convention.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(index_t pivot_, double value_)
      : Error("matrix not positive definite at pivot " + std::to_string(pivot_) +
              " (value " + std::to_string(value_) +
              "); condition number too large for chosen higher precision"),
        pivot(pivot_),
        value(value_) {}
  index_t pivot;
  double value;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int sweeps_, double max_offdiag_)
      : Error("Jacobi iteration did not converge in " + std::to_string(sweeps_) +
              " sweeps; final max normalized off-diagonal " +
              std::to_string(max_offdiag_)),
        sweeps(sweeps_),
        max_offdiag(max_offdiag_) {}
  int sweeps;
  double max_offdiag;
};

class ZeroColumnError : public Error {
 public:
  explicit ZeroColumnError(index_t column_)
      : Error("column " + std::to_string(column_) + " has zero norm"),
        column(column_) {}
  index_t column;
};

class ZeroDivisorError : public Error {
 public:
  explicit ZeroDivisorError(index_t index_)
      : Error("zero scale entry at index " + std::to_string(index_)),
        index(index_) {}
  index_t index;
};

class CastOverflowError : public Error {
 public:
  CastOverflowError(index_t row_, index_t col_, double value_)
      : Error("entry (" + std::to_string(row_) + "," + std::to_string(col_) +
              ") = " + std::to_string(value_) +
              " overflows the working precision range"),
        row(row_),
        col(col_),
        value(value_) {}
  index_t row;
  index_t col;
  double value;
};

class TinySingularValueError : public Error {
 public:
  TinySingularValueError(index_t index_, double value_)
      : Error("singular value " + std::to_string(index_) + " = " +
              std::to_string(value_) +
              " underflows the working precision normal range"),
        index(index_),
        value(value_) {}
  index_t index;
  double value;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------

class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(index_t rows, index_t cols, Precision prec)
      : rows_(rows), cols_(cols), prec_(prec) {
    if (rows < 0 || cols < 0)
      throw InvalidArgument("negative matrix dimension");
    const std::size_t len = static_cast<std::size_t>(rows) * cols;
    if (prec == Precision::Working)
      f_.assign(len, 0.0f);
    else
      d_.assign(len, 0.0);
  }

  static DenseMatrix identity(index_t n, Precision prec) {
    DenseMatrix a(n, n, prec);
    for (index_t i = 0; i < n; ++i) a.set(i, i, 1.0);
    return a;
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  Precision precision() const { return prec_; }
  index_t size() const { return rows_ * cols_; }

  // Typed raw access; caller must match the precision tag.
  float* fptr() { return f_.data(); }
  const float* fptr() const { return f_.data(); }
  double* dptr() { return d_.data(); }
  const double* dptr() const { return d_.data(); }

  // Generic access: reads widen losslessly to double, writes round to the
  // storage precision (round-to-nearest-even, the hardware default).
  double get(index_t i, index_t j) const {
    const std::size_t k = idx(i, j);
    return prec_ == Precision::Working ? static_cast<double>(f_[k]) : d_[k];
  }
  void set(index_t i, index_t j, double v) {
    const std::size_t k = idx(i, j);
    if (prec_ == Precision::Working)
      f_[k] = static_cast<float>(v);
    else
      d_[k] = v;
  }

  bool bitwise_equal(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           prec_ == other.prec_ && f_ == other.f_ && d_ == other.d_;
  }

 private:
  std::size_t idx(index_t i, index_t j) const {
    return static_cast<std::size_t>(j) * rows_ + i;
  }

  index_t rows_ = 0;
  index_t cols_ = 0;
  Precision prec_ = Precision::Higher;
  std::vector<float> f_;   // used when prec_ == Working
  std::vector<double> d_;  // used when prec_ == Higher
};

// Diagonal matrix (D, Sigma, column norms).  Entries are stored as doubles;
// a Working-precision DiagMatrix holds binary32 values exactly embedded.
struct DiagMatrix {
  std::vector<double> entries;
  Precision precision = Precision::Higher;

  DiagMatrix() = default;
  DiagMatrix(std::vector<double> e, Precision p)
      : entries(std::move(e)), precision(p) {}

  index_t size() const { return static_cast<index_t>(entries.size()); }
};

}  // namespace mpsvd
