// Exercises the shared library exactly as an external consumer would: only
// the C header, no core headers, no C++ types from the implementation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "doctest.h"
#include "mpsvd.h"

namespace {

mpsvd_matrix* make_stacked_diag(int64_t m, const double* d, int64_t n) {
  mpsvd_matrix* a = nullptr;
  REQUIRE(mpsvd_matrix_create(m, n, MPSVD_PRECISION_WORKING, &a) == MPSVD_OK);
  for (int64_t j = 0; j < n; ++j) REQUIRE(mpsvd_matrix_set(a, j, j, d[j]) == MPSVD_OK);
  return a;
}

}  // namespace

TEST_CASE("matrix lifecycle, storage precision, bounds checking") {
  mpsvd_matrix* a = nullptr;
  REQUIRE(mpsvd_matrix_create(3, 2, MPSVD_PRECISION_WORKING, &a) == MPSVD_OK);
  CHECK(mpsvd_matrix_rows(a) == 3);
  CHECK(mpsvd_matrix_cols(a) == 2);
  CHECK(mpsvd_matrix_precision(a) == MPSVD_PRECISION_WORKING);

  CHECK(mpsvd_matrix_set(a, 0, 0, 0.1) == MPSVD_OK);
  double v = 0.0;
  CHECK(mpsvd_matrix_get(a, 0, 0, &v) == MPSVD_OK);
  CHECK(v == static_cast<double>(0.1f));  // f32 storage rounds, reads widen

  CHECK(mpsvd_matrix_get(a, 3, 0, &v) == MPSVD_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(mpsvd_last_error_message()) > 0);
  CHECK(mpsvd_matrix_set(nullptr, 0, 0, 1.0) == MPSVD_ERR_INVALID_ARGUMENT);

  mpsvd_matrix_destroy(a);
}

TEST_CASE("text file round-trip is bit-exact") {
  mpsvd_matrix* a = nullptr;
  REQUIRE(mpsvd_matrix_create(4, 3, MPSVD_PRECISION_WORKING, &a) == MPSVD_OK);
  for (int64_t j = 0; j < 3; ++j)
    for (int64_t i = 0; i < 4; ++i)
      REQUIRE(mpsvd_matrix_set(a, i, j, std::sin(1.0 + i + 10.0 * j)) == MPSVD_OK);

  const char* path = "capi_roundtrip.txt";
  REQUIRE(mpsvd_matrix_write_file(path, a) == MPSVD_OK);
  mpsvd_matrix* back = nullptr;
  REQUIRE(mpsvd_matrix_read_file(path, &back) == MPSVD_OK);
  CHECK(mpsvd_matrix_bitwise_equal(a, back) == 1);
  mpsvd_matrix_destroy(back);
  mpsvd_matrix_destroy(a);
  std::remove(path);

  mpsvd_matrix* missing = nullptr;
  CHECK(mpsvd_matrix_read_file("no_such_file_here.txt", &missing) == MPSVD_ERR_IO);
}

TEST_CASE("thin svd and qr baseline through the C surface") {
  const double d[2] = {5.0, 3.0};
  mpsvd_matrix* a = make_stacked_diag(4, d, 2);

  mpsvd_svd_result* r = nullptr;
  REQUIRE(mpsvd_thin_svd(a, MPSVD_EIG_TWOSIDED_JACOBI, 1, &r) == MPSVD_OK);
  int64_t count = 0;
  const double* sigma = mpsvd_svd_sigma(r, &count);
  REQUIRE(count == 2);
  CHECK(sigma[0] == 5.0);
  CHECK(sigma[1] == 3.0);
  CHECK(mpsvd_matrix_rows(mpsvd_svd_u(r)) == 4);
  CHECK(mpsvd_matrix_cols(mpsvd_svd_u(r)) == 2);
  CHECK(mpsvd_matrix_rows(mpsvd_svd_v(r)) == 2);
  CHECK(mpsvd_svd_sync_events(r) == 1);
  CHECK(mpsvd_svd_is_qr_baseline(r) == 0);
  double orth = 1.0;
  CHECK(mpsvd_orth_error(mpsvd_svd_u(r), &orth) == MPSVD_OK);
  CHECK(orth <= 16 * 0x1p-24);

  double t[5];
  mpsvd_svd_times(r, t);
  for (int i = 0; i < 4; ++i) CHECK(t[i] >= 0.0);
  CHECK(std::abs(t[0] + t[1] + t[2] + t[3] - t[4]) <= 1e-9 + 1e-6 * t[4]);
  mpsvd_svd_destroy(r);

  mpsvd_svd_result* q = nullptr;
  REQUIRE(mpsvd_qr_svd_baseline(a, &q) == MPSVD_OK);
  sigma = mpsvd_svd_sigma(q, &count);
  REQUIRE(count == 2);
  CHECK(sigma[0] == 5.0);
  CHECK(sigma[1] == 3.0);
  CHECK(mpsvd_svd_is_qr_baseline(q) == 1);
  mpsvd_svd_times(q, t);
  CHECK(t[0] == 0.0);
  mpsvd_svd_destroy(q);

  CHECK(mpsvd_thin_svd(a, static_cast<mpsvd_eigensolver>(9), 1, &r) ==
        MPSVD_ERR_INVALID_ARGUMENT);
  CHECK(mpsvd_thin_svd(a, MPSVD_EIG_TWOSIDED_JACOBI, 0, &r) ==
        MPSVD_ERR_INVALID_ARGUMENT);
  mpsvd_matrix_destroy(a);
}

TEST_CASE("error payloads carry status, index, and message") {
  // duplicated column: the Gram matrix has an exactly zero second pivot
  mpsvd_matrix* a = nullptr;
  REQUIRE(mpsvd_matrix_create(2, 2, MPSVD_PRECISION_WORKING, &a) == MPSVD_OK);
  REQUIRE(mpsvd_matrix_set(a, 0, 0, 1.0) == MPSVD_OK);
  REQUIRE(mpsvd_matrix_set(a, 0, 1, 1.0) == MPSVD_OK);
  mpsvd_matrix *q = nullptr, *r = nullptr;
  CHECK(mpsvd_cholesky_qr(a, &q, &r) == MPSVD_ERR_NOT_POSITIVE_DEFINITE);
  CHECK(mpsvd_last_error_index() == 2);
  CHECK(std::strlen(mpsvd_last_error_message()) > 0);
  mpsvd_matrix_destroy(a);

  const double d[2] = {1.0, 1e-39};
  mpsvd_matrix* tiny = make_stacked_diag(2, d, 2);
  mpsvd_svd_result* out = nullptr;
  CHECK(mpsvd_thin_svd(tiny, MPSVD_EIG_TWOSIDED_JACOBI, 1, &out) ==
        MPSVD_ERR_TINY_SINGULAR_VALUE);
  CHECK(mpsvd_last_error_index() == 2);
  mpsvd_matrix_destroy(tiny);
}

TEST_CASE("generated problems are deterministic and carry their metadata") {
  mpsvd_problem_spec spec;
  spec.m = 64;
  spec.n = 8;
  spec.kappa_d = 1e2;
  spec.kappa_b = 10.0;
  spec.matrix_id = 1;
  spec.seed = 5;

  mpsvd_problem* p1 = nullptr;
  mpsvd_problem* p2 = nullptr;
  REQUIRE(mpsvd_generate_problem(&spec, &p1) == MPSVD_OK);
  REQUIRE(mpsvd_generate_problem(&spec, &p2) == MPSVD_OK);
  CHECK(mpsvd_matrix_bitwise_equal(mpsvd_problem_a(p1), mpsvd_problem_a(p2)) == 1);
  mpsvd_problem_destroy(p2);

  CHECK(mpsvd_matrix_precision(mpsvd_problem_a(p1)) == MPSVD_PRECISION_WORKING);
  CHECK(mpsvd_matrix_precision(mpsvd_problem_b(p1)) == MPSVD_PRECISION_HIGHER);

  const double k = mpsvd_problem_realized_kappa_b(p1);
  CHECK(k >= 5.0);
  CHECK(k <= 20.0);

  int64_t nd = 0, ns = 0;
  const double* diag = mpsvd_problem_d(p1, &nd);
  const double* sref = mpsvd_problem_sigma_ref(p1, &ns);
  REQUIRE(nd == 8);
  REQUIRE(ns == 8);
  for (int64_t i = 0; i < 8; ++i) CHECK(diag[i] > 0.0);
  for (int64_t i = 1; i < 8; ++i) CHECK(sref[i] <= sref[i - 1]);

  // the oracle of the cast matrix sits within cast distance of sigma_ref
  double ref[8];
  REQUIRE(mpsvd_reference_svd(mpsvd_problem_a(p1), ref, 8) == MPSVD_OK);
  double err = 1.0;
  REQUIRE(mpsvd_max_rel_sv_error(ref, sref, 8, &err) == MPSVD_OK);
  CHECK(err <= 1e-4);

  double kappa_est = 0.0;
  REQUIRE(mpsvd_estimate_kappa(mpsvd_problem_b(p1), &kappa_est) == MPSVD_OK);
  CHECK(kappa_est == doctest::Approx(k).epsilon(1e-6));

  mpsvd_problem_destroy(p1);

  spec.matrix_id = 17;
  mpsvd_problem* bad = nullptr;
  CHECK(mpsvd_generate_problem(&spec, &bad) == MPSVD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bound evaluation and backward error through the C surface") {
  double sv = 0, orth = 0, backward = 0, eps1 = 0;
  int ok = 0;
  REQUIRE(mpsvd_theoretical_bounds(64, 1.0, MPSVD_EIG_TWOSIDED_JACOBI, &sv, &orth,
                                   &backward, &eps1, &ok) == MPSVD_OK);
  CHECK(sv == doctest::Approx(1.5258905506243536e-05).epsilon(1e-14));
  CHECK(ok == 1);
  REQUIRE(mpsvd_theoretical_bounds(64, 1e12, MPSVD_EIG_TWOSIDED_JACOBI, &sv, &orth,
                                   &backward, &eps1, &ok) == MPSVD_OK);
  CHECK(ok == 0);

  const double d[2] = {3.0, 2.0};
  mpsvd_matrix* a = make_stacked_diag(2, d, 2);
  mpsvd_matrix* id2 = nullptr;
  REQUIRE(mpsvd_matrix_create(2, 2, MPSVD_PRECISION_WORKING, &id2) == MPSVD_OK);
  REQUIRE(mpsvd_matrix_set(id2, 0, 0, 1.0) == MPSVD_OK);
  REQUIRE(mpsvd_matrix_set(id2, 1, 1, 1.0) == MPSVD_OK);
  double max_rel = 1.0;
  int64_t skipped = -1;
  REQUIRE(mpsvd_rowwise_backward_error(a, id2, d, 2, id2, &max_rel, &skipped) ==
          MPSVD_OK);
  CHECK(max_rel == 0.0);
  CHECK(skipped == 0);
  mpsvd_matrix_destroy(id2);
  mpsvd_matrix_destroy(a);
}

TEST_CASE("shortest round-trip formatting") {
  char buf[32];
  size_t len = mpsvd_format_shortest(0.1, buf, sizeof buf);
  CHECK(std::string(buf) == "0.1");
  CHECK(len == 3);

  const double third = 1.0 / 3.0;
  mpsvd_format_shortest(third, buf, sizeof buf);
  CHECK(std::strtod(buf, nullptr) == third);

  // truncation keeps the buffer NUL-terminated and reports the full length
  char small[4];
  len = mpsvd_format_shortest(third, small, sizeof small);
  CHECK(len > 3);
  CHECK(std::strlen(small) == 3);
}
