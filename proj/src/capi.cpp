#include "mpsvd.h"

#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "mpsvd/dense.hpp"
#include "mpsvd/io.hpp"
#include "mpsvd/matgen.hpp"
#include "mpsvd/metrics.hpp"
#include "mpsvd/thinsvd.hpp"
#include "mpsvd/types.hpp"

struct mpsvd_matrix {
  mpsvd::DenseMatrix m;
};

struct mpsvd_problem {
  mpsvd_matrix a;
  mpsvd_matrix b;
  std::vector<double> d;
  std::vector<double> sigma_ref;
  double realized_kappa_b = 0.0;
};

struct mpsvd_svd_result {
  mpsvd_matrix u;
  mpsvd_matrix v;
  std::vector<double> sigma;
  double times[5] = {0, 0, 0, 0, 0};
  int sync_events = 0;
  int64_t gram_blocks = 0;
  int qr_baseline = 0;
};

namespace {

thread_local std::string g_error_message;
thread_local int64_t g_error_index = 0;

mpsvd_status fail(mpsvd_status s, const char* msg, int64_t index = 0) {
  g_error_message = msg;
  g_error_index = index;
  return s;
}

// Runs the body and maps the library's exception hierarchy onto status codes,
// capturing the message and any index payload for the diagnostics calls.
template <typename F>
mpsvd_status guarded(F&& body) noexcept {
  using namespace mpsvd;
  try {
    g_error_message.clear();
    g_error_index = 0;
    body();
    return MPSVD_OK;
  } catch (const InvalidArgument& e) {
    return fail(MPSVD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const NotPositiveDefiniteError& e) {
    return fail(MPSVD_ERR_NOT_POSITIVE_DEFINITE, e.what(), e.pivot);
  } catch (const NoConvergenceError& e) {
    return fail(MPSVD_ERR_NO_CONVERGENCE, e.what());
  } catch (const ZeroColumnError& e) {
    return fail(MPSVD_ERR_ZERO_COLUMN, e.what(), e.column);
  } catch (const ZeroDivisorError& e) {
    return fail(MPSVD_ERR_ZERO_DIVISOR, e.what(), e.index);
  } catch (const CastOverflowError& e) {
    return fail(MPSVD_ERR_CAST_OVERFLOW, e.what());
  } catch (const TinySingularValueError& e) {
    return fail(MPSVD_ERR_TINY_SINGULAR_VALUE, e.what(), e.index);
  } catch (const InfeasibleError& e) {
    return fail(MPSVD_ERR_INFEASIBLE, e.what());
  } catch (const IoError& e) {
    return fail(MPSVD_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(MPSVD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MPSVD_ERR_INTERNAL, "unknown error");
  }
}

mpsvd::Precision to_precision(mpsvd_precision p) {
  if (p != MPSVD_PRECISION_WORKING && p != MPSVD_PRECISION_HIGHER)
    throw mpsvd::InvalidArgument("unknown precision value");
  return p == MPSVD_PRECISION_WORKING ? mpsvd::Precision::Working
                                      : mpsvd::Precision::Higher;
}

mpsvd::EigensolverChoice to_choice(mpsvd_eigensolver e) {
  switch (e) {
    case MPSVD_EIG_TWOSIDED_JACOBI:
      return mpsvd::EigensolverChoice::TwoSidedJacobi;
    case MPSVD_EIG_GRAM_CHOL_SVD:
      return mpsvd::EigensolverChoice::GramCholSvd;
    case MPSVD_EIG_ONESIDED_JACOBI_GRAM:
      return mpsvd::EigensolverChoice::OneSidedJacobiOnGram;
  }
  throw mpsvd::InvalidArgument("unknown eigensolver value");
}

void require(bool ok, const char* msg) {
  if (!ok) throw mpsvd::InvalidArgument(msg);
}

mpsvd_svd_result* from_result(mpsvd::ThinSvdResult&& r) {
  auto* out = new mpsvd_svd_result;
  out->u.m = std::move(r.factors.u);
  out->v.m = std::move(r.factors.v);
  out->sigma = std::move(r.factors.sigma);
  out->times[0] = r.times.gram;
  out->times[1] = r.times.eigen;
  out->times[2] = r.times.compute_u;
  out->times[3] = r.times.overlap;
  out->times[4] = r.times.total;
  out->sync_events = r.gram_sync_events;
  out->gram_blocks = r.gram_blocks;
  out->qr_baseline = r.qr_baseline ? 1 : 0;
  return out;
}

}  // namespace

extern "C" {

const char* mpsvd_last_error_message(void) { return g_error_message.c_str(); }

int64_t mpsvd_last_error_index(void) { return g_error_index; }

mpsvd_status mpsvd_matrix_create(int64_t rows, int64_t cols, mpsvd_precision prec,
                                 mpsvd_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(rows >= 0 && cols >= 0, "negative dimension");
    auto p = to_precision(prec);
    *out = new mpsvd_matrix{mpsvd::DenseMatrix(rows, cols, p)};
  });
}

void mpsvd_matrix_destroy(mpsvd_matrix* a) { delete a; }

int64_t mpsvd_matrix_rows(const mpsvd_matrix* a) { return a ? a->m.rows() : 0; }

int64_t mpsvd_matrix_cols(const mpsvd_matrix* a) { return a ? a->m.cols() : 0; }

mpsvd_precision mpsvd_matrix_precision(const mpsvd_matrix* a) {
  return (a && a->m.precision() == mpsvd::Precision::Higher) ? MPSVD_PRECISION_HIGHER
                                                             : MPSVD_PRECISION_WORKING;
}

mpsvd_status mpsvd_matrix_set(mpsvd_matrix* a, int64_t row, int64_t col, double value) {
  return guarded([&] {
    require(a != nullptr, "matrix is null");
    require(row >= 0 && row < a->m.rows() && col >= 0 && col < a->m.cols(),
            "index out of range");
    a->m.set(row, col, value);
  });
}

mpsvd_status mpsvd_matrix_get(const mpsvd_matrix* a, int64_t row, int64_t col,
                              double* value) {
  return guarded([&] {
    require(a != nullptr && value != nullptr, "null argument");
    require(row >= 0 && row < a->m.rows() && col >= 0 && col < a->m.cols(),
            "index out of range");
    *value = a->m.get(row, col);
  });
}

int mpsvd_matrix_bitwise_equal(const mpsvd_matrix* a, const mpsvd_matrix* b) {
  if (!a || !b) return 0;
  return a->m.bitwise_equal(b->m) ? 1 : 0;
}

mpsvd_status mpsvd_matrix_write_file(const char* path, const mpsvd_matrix* a) {
  return guarded([&] {
    require(path != nullptr && a != nullptr, "null argument");
    mpsvd::write_matrix_file(path, a->m);
  });
}

mpsvd_status mpsvd_matrix_read_file(const char* path, mpsvd_matrix** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new mpsvd_matrix{mpsvd::read_matrix_file(path)};
  });
}

mpsvd_status mpsvd_orth_error(const mpsvd_matrix* a, double* out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = mpsvd::orth_error(a->m);
  });
}

mpsvd_status mpsvd_generate_problem(const mpsvd_problem_spec* spec, mpsvd_problem** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    mpsvd::TestMatrixSpec s;
    s.m = spec->m;
    s.n = spec->n;
    s.kappa_d = spec->kappa_d;
    s.kappa_b = spec->kappa_b;
    s.matrix_id = spec->matrix_id;
    s.seed = spec->seed;
    auto p = mpsvd::build_problem(s);
    auto* h = new mpsvd_problem;
    h->a.m = std::move(p.a);
    h->b.m = std::move(p.b);
    h->d = std::move(p.d.entries);
    h->sigma_ref = std::move(p.sigma_ref);
    h->realized_kappa_b = p.realized_kappa_b;
    *out = h;
  });
}

void mpsvd_problem_destroy(mpsvd_problem* p) { delete p; }

const mpsvd_matrix* mpsvd_problem_a(const mpsvd_problem* p) { return p ? &p->a : nullptr; }

const mpsvd_matrix* mpsvd_problem_b(const mpsvd_problem* p) { return p ? &p->b : nullptr; }

const double* mpsvd_problem_d(const mpsvd_problem* p, int64_t* count) {
  if (!p) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = static_cast<int64_t>(p->d.size());
  return p->d.data();
}

const double* mpsvd_problem_sigma_ref(const mpsvd_problem* p, int64_t* count) {
  if (!p) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = static_cast<int64_t>(p->sigma_ref.size());
  return p->sigma_ref.data();
}

double mpsvd_problem_realized_kappa_b(const mpsvd_problem* p) {
  return p ? p->realized_kappa_b : 0.0;
}

mpsvd_status mpsvd_thin_svd(const mpsvd_matrix* a, mpsvd_eigensolver eig, int threads,
                            mpsvd_svd_result** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    auto r = mpsvd::mp_thin_svd(a->m, to_choice(eig), {}, threads);
    *out = from_result(std::move(r));
  });
}

mpsvd_status mpsvd_qr_svd_baseline(const mpsvd_matrix* a, mpsvd_svd_result** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    auto r = mpsvd::qr_thin_svd_baseline(a->m);
    *out = from_result(std::move(r));
  });
}

void mpsvd_svd_destroy(mpsvd_svd_result* r) { delete r; }

const mpsvd_matrix* mpsvd_svd_u(const mpsvd_svd_result* r) { return r ? &r->u : nullptr; }

const mpsvd_matrix* mpsvd_svd_v(const mpsvd_svd_result* r) { return r ? &r->v : nullptr; }

const double* mpsvd_svd_sigma(const mpsvd_svd_result* r, int64_t* count) {
  if (!r) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = static_cast<int64_t>(r->sigma.size());
  return r->sigma.data();
}

void mpsvd_svd_times(const mpsvd_svd_result* r, double times[5]) {
  if (!r || !times) return;
  std::memcpy(times, r->times, sizeof(r->times));
}

int mpsvd_svd_sync_events(const mpsvd_svd_result* r) { return r ? r->sync_events : 0; }

int64_t mpsvd_svd_gram_blocks(const mpsvd_svd_result* r) { return r ? r->gram_blocks : 0; }

int mpsvd_svd_is_qr_baseline(const mpsvd_svd_result* r) { return r ? r->qr_baseline : 0; }

mpsvd_status mpsvd_cholesky_qr(const mpsvd_matrix* a, mpsvd_matrix** q_out,
                               mpsvd_matrix** r_out) {
  return guarded([&] {
    require(a != nullptr && q_out != nullptr && r_out != nullptr, "null argument");
    auto f = mpsvd::mp_cholesky_qr(a->m);
    *q_out = new mpsvd_matrix{std::move(f.q)};
    *r_out = new mpsvd_matrix{std::move(f.r)};
  });
}

mpsvd_status mpsvd_reference_svd(const mpsvd_matrix* a, double* out, int64_t count) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    require(count == a->m.cols(), "out length must equal the column count");
    auto s = mpsvd::reference_svd(a->m);
    std::memcpy(out, s.data(), s.size() * sizeof(double));
  });
}

mpsvd_status mpsvd_max_rel_sv_error(const double* computed, const double* reference,
                                    int64_t count, double* out) {
  return guarded([&] {
    require(computed != nullptr && reference != nullptr && out != nullptr,
            "null argument");
    require(count >= 0, "negative length");
    std::vector<double> c(computed, computed + count);
    std::vector<double> r(reference, reference + count);
    *out = mpsvd::max_rel_sv_error(c, r);
  });
}

mpsvd_status mpsvd_rowwise_backward_error(const mpsvd_matrix* a, const mpsvd_matrix* u,
                                          const double* sigma, int64_t count,
                                          const mpsvd_matrix* v, double* max_rel,
                                          int64_t* skipped_rows) {
  return guarded([&] {
    require(a != nullptr && u != nullptr && sigma != nullptr && v != nullptr &&
                max_rel != nullptr,
            "null argument");
    std::vector<double> s(sigma, sigma + count);
    auto rep = mpsvd::rowwise_backward_error(a->m, u->m, s, v->m);
    *max_rel = rep.max_rel;
    if (skipped_rows) *skipped_rows = rep.skipped_rows;
  });
}

mpsvd_status mpsvd_theoretical_bounds(int64_t n, double kappa_b, mpsvd_eigensolver eig,
                                      double* bound_sv, double* bound_orth,
                                      double* bound_backward, double* eps1,
                                      int* assumption_ok) {
  return guarded([&] {
    require(n >= 1, "n must be positive");
    auto b = mpsvd::theoretical_bounds(mpsvd::BoundParams::defaults(n), n, kappa_b,
                                       to_choice(eig));
    if (bound_sv) *bound_sv = b.sv;
    if (bound_orth) *bound_orth = b.orth;
    if (bound_backward) *bound_backward = b.backward;
    if (eps1) *eps1 = b.eps1;
    if (assumption_ok) *assumption_ok = b.assumption_ok ? 1 : 0;
  });
}

mpsvd_status mpsvd_estimate_kappa(const mpsvd_matrix* b, double* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = mpsvd::estimate_kappa(b->m);
  });
}

size_t mpsvd_format_shortest(double value, char* buf, size_t cap) {
  const std::string s = mpsvd::format_shortest(value);
  if (buf && cap > 0) {
    const size_t n = s.size() < cap - 1 ? s.size() : cap - 1;
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return s.size();
}

}  // extern "C"
