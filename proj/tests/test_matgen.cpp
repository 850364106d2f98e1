#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mpsvd/dense.hpp"
#include "mpsvd/jacobi.hpp"
#include "mpsvd/matgen.hpp"

using namespace mpsvd;

namespace {

constexpr double kUh = 0x1p-53;

double measured_norm(const DenseMatrix& b, index_t j) {
  double s = 0.0;
  for (index_t i = 0; i < b.rows(); ++i) s += b.get(i, j) * b.get(i, j);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("diag_from_mode: the five mode shapes") {
  Rng rng(1);

  const auto m1 = diag_from_mode({1, 100.0}, 4, rng);
  CHECK(m1 == std::vector<double>{1.0, 0.01, 0.01, 0.01});

  const auto m2 = diag_from_mode({2, 10.0}, 3, rng);
  CHECK(m2 == std::vector<double>{1.0, 1.0, 0.1});

  const auto m3 = diag_from_mode({3, 100.0}, 3, rng);
  CHECK(m3[0] == 1.0);
  CHECK(m3[1] == doctest::Approx(0.1).epsilon(4 * kUh));
  CHECK(m3[2] == doctest::Approx(0.01).epsilon(4 * kUh));

  const auto m4 = diag_from_mode({4, 10.0}, 3, rng);
  CHECK(m4[0] == 1.0);
  CHECK(m4[1] == doctest::Approx(0.55).epsilon(4 * kUh));
  CHECK(m4[2] == doctest::Approx(0.1).epsilon(4 * kUh));

  Rng r5a(9), r5b(9);
  const auto m5 = diag_from_mode({5, 1000.0}, 50, r5a);
  for (double v : m5) {
    CHECK(v <= 1.0);
    CHECK(v >= 1.0 / 1000.0);
  }
  const auto [mn, mx] = std::minmax_element(m5.begin(), m5.end());
  CHECK(*mx / *mn <= 1000.0);
  CHECK(diag_from_mode({5, 1000.0}, 50, r5b) == m5);  // bitwise determinism
}

TEST_CASE("diag_from_mode: max/min ratio equals kappa for modes 1-4") {
  Rng rng(1);
  for (int mode = 1; mode <= 4; ++mode) {
    for (double kappa : {10.0, 1e4, 1e8}) {
      const auto d = diag_from_mode({mode, kappa}, 7, rng);
      const auto [mn, mx] = std::minmax_element(d.begin(), d.end());
      CHECK(*mx / *mn == doctest::Approx(kappa).epsilon(4 * kUh));
    }
  }
}

TEST_CASE("diag_from_mode: argument validation") {
  Rng rng(1);
  CHECK_THROWS_AS(diag_from_mode({0, 10.0}, 4, rng), InvalidArgument);
  CHECK_THROWS_AS(diag_from_mode({6, 10.0}, 4, rng), InvalidArgument);
  CHECK_THROWS_AS(diag_from_mode({1, 0.5}, 4, rng), InvalidArgument);
  CHECK_THROWS_AS(diag_from_mode({3, 10.0}, 1, rng), InvalidArgument);
  CHECK_THROWS_AS(diag_from_mode({4, 10.0}, 1, rng), InvalidArgument);
  CHECK(diag_from_mode({1, 10.0}, 1, rng) == std::vector<double>{1.0});
}

TEST_CASE("haar_orthonormal: sign fixing, orthogonality, determinism") {
  Rng a(3), b(3);
  const auto one = haar_orthonormal(1, 1, a);
  CHECK(one.get(0, 0) == 1.0);

  Rng r(11);
  const auto q = haar_orthonormal(5, 3, r);
  CHECK(orth_error(q) <= 10.0 * std::sqrt(3.0) * kUh);

  Rng r2(12);
  const auto qbig = haar_orthonormal(64, 16, r2);
  CHECK(orth_error(qbig) <= 10.0 * 4.0 * kUh);

  (void)b;
  Rng s1(42), s2(42);
  CHECK(haar_orthonormal(6, 4, s1).bitwise_equal(haar_orthonormal(6, 4, s2)));
}

TEST_CASE("unit_norm_column_matrix: orthonormal spectrum case") {
  Rng rng(21);
  EquilibrationStats st;
  const auto b = unit_norm_column_matrix({1.0, 1.0, 1.0}, 6, rng, &st);
  CHECK(st.max_abs_deviation <= 4.0 * kUh);
  CHECK(st.rotations <= 9);  // statistically ~0; bounded by n^2 regardless
  for (index_t j = 0; j < 3; ++j)
    CHECK(std::abs(measured_norm(b, j) - 1.0) <= 10.0 * 3 * kUh);
  // all singular values 1 after renormalization
  const auto f = onesided_jacobi_svd(b);
  for (double s : f.sigma) CHECK(s == doctest::Approx(1.0).epsilon(1e3 * 3 * kUh));
}

TEST_CASE("unit_norm_column_matrix: realized kappa matches the request") {
  Rng rng(22);
  const auto b = unit_norm_column_matrix({10.0, 1.0}, 4, rng);
  const auto f = onesided_jacobi_svd(b);
  CHECK(f.sigma[0] / f.sigma[1] == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("unit_norm_column_matrix: column norms and sigma preservation") {
  const std::vector<double> sigma{3.0, 2.5, 0.8, 0.1, 0.07};
  const double ss = 9.0 + 6.25 + 0.64 + 0.01 + 0.0049;
  const double gamma = std::sqrt(5.0 / ss);

  Rng rng(23);
  EquilibrationStats st;
  const auto b = unit_norm_column_matrix(sigma, 32, rng, &st);
  CHECK(st.max_abs_deviation <= 4.0 * kUh);
  for (index_t j = 0; j < 5; ++j)
    CHECK(std::abs(measured_norm(b, j) - 1.0) <= 10.0 * 5 * kUh);

  const auto f = onesided_jacobi_svd(b);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    CHECK(f.sigma[i] ==
          doctest::Approx(gamma * sigma[i]).epsilon(1e3 * 5 * kUh));
}

TEST_CASE("unit_norm_column_matrix: single column and bad input") {
  Rng rng(24);
  const auto b = unit_norm_column_matrix({0.25}, 5, rng);
  CHECK(std::abs(measured_norm(b, 0) - 1.0) <= 10.0 * kUh);
  Rng rng2(24);
  CHECK_THROWS_AS(unit_norm_column_matrix({1.0, -1.0}, 4, rng2),
                  InvalidArgument);
  Rng rng3(24);
  CHECK_THROWS_AS(unit_norm_column_matrix({1.0, 1.0, 1.0}, 2, rng3),
                  InvalidArgument);
}

TEST_CASE("matrix_id_to_modes: the full table") {
  const std::pair<int, int> expected[16] = {
      {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 2},
      {3, 4}, {3, 5}, {4, 2}, {4, 3}, {4, 5}, {5, 2}, {5, 3}, {5, 4}};
  for (int id = 1; id <= 16; ++id) CHECK(matrix_id_to_modes(id) == expected[id - 1]);
  CHECK_THROWS_AS(matrix_id_to_modes(0), InvalidArgument);
  CHECK_THROWS_AS(matrix_id_to_modes(17), InvalidArgument);
}

TEST_CASE("build_problem: kappa = 1 gives the identity spectrum") {
  const TestMatrixSpec spec{8, 4, 1.0, 1.0, 1, 7};
  const auto p = build_problem(spec);
  for (double s : p.sigma_ref) CHECK(std::abs(s - 1.0) <= 1e3 * kUh);
  CHECK(p.sigma_ref.front() / p.sigma_ref.back() <= 1.0 + 1e3 * kUh);
  CHECK(p.realized_kappa_b == 1.0);
}

TEST_CASE("build_problem: pure function of the spec") {
  const TestMatrixSpec spec{16, 6, 1e4, 100.0, 9, 123};
  const auto p1 = build_problem(spec);
  const auto p2 = build_problem(spec);
  CHECK(p1.a.bitwise_equal(p2.a));
  CHECK(p1.b.bitwise_equal(p2.b));
  CHECK(p1.d.entries == p2.d.entries);
  CHECK(p1.sigma_ref == p2.sigma_ref);

  // id 16 exercises both mode-5 streams
  const TestMatrixSpec spec5{12, 5, 100.0, 10.0, 16, 77};
  CHECK(build_problem(spec5).a.bitwise_equal(build_problem(spec5).a));
}

TEST_CASE("build_problem: structural invariants") {
  const TestMatrixSpec spec{24, 8, 1e6, 1e3, 9, 5};
  const auto p = build_problem(spec);

  // A = cast(B*diag(d)) entrywise
  const auto bd = scale_columns(p.b, p.d, false);
  CHECK(cast(bd, Precision::Working).bitwise_equal(p.a));

  // unit columns of B, descending positive sigma_ref
  for (index_t j = 0; j < spec.n; ++j)
    CHECK(std::abs(measured_norm(p.b, j) - 1.0) <= 10.0 * 8 * kUh);
  CHECK(p.sigma_ref.back() > 0.0);
  for (std::size_t i = 1; i < p.sigma_ref.size(); ++i)
    CHECK(p.sigma_ref[i - 1] >= p.sigma_ref[i]);

  CHECK(p.realized_kappa_b == doctest::Approx(1e3).epsilon(1e-12));
}

TEST_CASE("build_problem: suite-scale instance hits the kappa window") {
  const TestMatrixSpec spec{1024, 64, 1e8, 1e3, 3, 1};
  const auto p = build_problem(spec);
  const auto f = onesided_jacobi_svd(p.b);  // Higher-precision measurement
  const double realized = f.sigma.front() / f.sigma.back();
  CHECK(realized >= 0.5e3);
  CHECK(realized <= 2e3);
  for (index_t j = 0; j < spec.n; ++j)
    CHECK(std::abs(measured_norm(p.b, j) - 1.0) <= 10.0 * 64 * kUh);
}
