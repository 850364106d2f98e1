// Command-line harness: test-matrix generation, the accuracy suite, and the
// timing suite, all on top of the shared C library.
//
// Exit codes: 0 all hard bounds pass, 1 at least one bound failure, 2 usage
// error, 3 solver/generation error (3 wins over 1 when both occur).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpsvd.h"

namespace {

constexpr double kU = 0x1p-24;   // binary32 unit roundoff
constexpr double kUh = 0x1p-53;  // binary64 unit roundoff

constexpr int kExitOk = 0;
constexpr int kExitBoundFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverError = 3;

struct SuiteOptions {
  int64_t n = 64;
  int64_t m_ratio = 16;
  std::vector<double> kappa_b{10.0};
  std::vector<double> kappa_d{1.0};
  std::vector<int64_t> matrix_ids{1};
  std::vector<std::string> methods{"twosided-jacobi"};
  uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string config;
  bool resume = false;
};

// -1 encodes the QR baseline (not an eigensolver choice).
int method_code(const std::string& name) {
  if (name == "twosided-jacobi") return MPSVD_EIG_TWOSIDED_JACOBI;
  if (name == "gram-chol-svd") return MPSVD_EIG_GRAM_CHOL_SVD;
  if (name == "onesided-jacobi-gram") return MPSVD_EIG_ONESIDED_JACOBI_GRAM;
  if (name == "qr-baseline") return -1;
  return -2;
}

std::string fmt(double v) {
  char buf[40];
  mpsvd_format_shortest(v, buf, sizeof buf);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(cells[i]);
  }
  return line;
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

int validate_common(const SuiteOptions& o) {
  if (o.n < 2) return usage_error("--n must be at least 2");
  if (o.m_ratio < 1) return usage_error("--m-ratio must be at least 1");
  if (o.kappa_b.empty() || o.kappa_d.empty() || o.matrix_ids.empty() ||
      o.methods.empty())
    return usage_error("list options must be nonempty");
  for (double k : o.kappa_b)
    if (!(k >= 1.0)) return usage_error("--kappa-b entries must be >= 1");
  for (double k : o.kappa_d)
    if (!(k >= 1.0)) return usage_error("--kappa-d entries must be >= 1");
  for (int64_t id : o.matrix_ids)
    if (id < 1 || id > 16)
      return usage_error("--matrix-ids entries must be in 1..16, got " +
                         std::to_string(id));
  for (const auto& m : o.methods)
    if (method_code(m) == -2)
      return usage_error("unknown --eigensolver '" + m +
                         "' (twosided-jacobi|gram-chol-svd|onesided-jacobi-gram|"
                         "qr-baseline)");
  if (o.threads < 1) return usage_error("--threads must be at least 1");
  return kExitOk;
}

// Applies `key=value` lines from --config for every option not already given
// on the command line.  Blank lines and '#' comments are allowed; keys use
// the flag spellings without the leading dashes.
int apply_config(const CLI::App& cmd, SuiteOptions* o) {
  if (o->config.empty()) return kExitOk;
  std::ifstream in(o->config);
  if (!in) return usage_error("cannot open config file: " + o->config);
  const auto trim = [](const std::string& s) {
    const char* ws = " \t\r";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(ws) - a + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      return usage_error("config line " + std::to_string(lineno) +
                         " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto parts = [&] {
      std::vector<std::string> out;
      std::stringstream ss(value);
      std::string part;
      while (std::getline(ss, part, ',')) out.push_back(trim(part));
      return out;
    };
    try {
      if (key == "n") {
        if (!cmd.count("--n")) o->n = std::stoll(value);
      } else if (key == "m-ratio") {
        if (!cmd.count("--m-ratio")) o->m_ratio = std::stoll(value);
      } else if (key == "kappa-b") {
        if (!cmd.count("--kappa-b")) {
          o->kappa_b.clear();
          for (const auto& p : parts()) o->kappa_b.push_back(std::stod(p));
        }
      } else if (key == "kappa-d") {
        if (!cmd.count("--kappa-d")) {
          o->kappa_d.clear();
          for (const auto& p : parts()) o->kappa_d.push_back(std::stod(p));
        }
      } else if (key == "matrix-ids") {
        if (!cmd.count("--matrix-ids")) {
          o->matrix_ids.clear();
          for (const auto& p : parts()) o->matrix_ids.push_back(std::stoll(p));
        }
      } else if (key == "eigensolver") {
        if (!cmd.count("--eigensolver")) o->methods = parts();
      } else if (key == "seed") {
        if (!cmd.count("--seed")) o->seed = std::stoull(value);
      } else if (key == "threads") {
        if (!cmd.count("--threads")) o->threads = static_cast<int>(std::stoll(value));
      } else if (key == "out") {
        if (!cmd.count("--out")) o->out = value;
      } else {
        return usage_error("unknown config key '" + key + "'");
      }
    } catch (const std::exception&) {
      return usage_error("bad value for config key '" + key + "': " + value);
    }
  }
  return kExitOk;
}

struct ProblemHolder {
  mpsvd_problem* p = nullptr;
  ~ProblemHolder() { mpsvd_problem_destroy(p); }
};

struct SvdHolder {
  mpsvd_svd_result* r = nullptr;
  ~SvdHolder() { mpsvd_svd_destroy(r); }
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Hard accuracy bound per method (the statistical pass/fail line, distinct
// from the a-priori bound columns): Higher-precision eigensolvers pay
// u + u_h*kappa^2, the Cholesky route pays u*kappa + u_h*kappa^2.
double hard_sv_bound(int code, int64_t /*n*/, double kappa_b) {
  const double tail = kUh * kappa_b * kappa_b;
  if (code == MPSVD_EIG_GRAM_CHOL_SVD) return 100.0 * (kU * kappa_b + tail);
  return 100.0 * (kU + tail);
}

// ---------------------------------------------------------------------------
// accuracy suite

const char* kAccuracyHeader =
    "index,n,m,kappa_b,kappa_d,matrix_id,seed,method,threads,realized_kappa_b,"
    "max_rel_sv_err,orth_u,orth_v,rowwise_backward_max,bound_sv,bound_orth,"
    "bound_backward,sv_pass,orth_pass,backward_pass,assumption_ok,fallback,"
    "wall_time_s,error";

// Loads "index|method" keys from an existing CSV so a rerun appends only the
// missing rows.
int load_resume_keys(const std::string& path, const char* header,
                     std::set<std::string>* keys, bool* has_file) {
  std::ifstream in(path);
  *has_file = in.good();
  if (!*has_file) return kExitOk;
  std::string line;
  if (!std::getline(in, line)) {
    *has_file = false;  // empty file: start fresh
    return kExitOk;
  }
  if (line != header)
    return usage_error("existing output file has a different schema: " + path);
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string index_cell, skip, method_cell;
    std::getline(ss, index_cell, ',');
    for (int i = 0; i < 6; ++i) std::getline(ss, skip, ',');
    std::getline(ss, method_cell, ',');
    if (!index_cell.empty()) keys->insert(index_cell + "|" + method_cell);
  }
  return kExitOk;
}

struct RowOutcome {
  bool error = false;
  bool bound_fail = false;
};

RowOutcome accuracy_row(std::ostream& os, int index, const SuiteOptions& o,
                        const mpsvd_problem_spec& spec, const mpsvd_problem* prob,
                        const std::vector<double>& reference, const std::string& method,
                        const std::string& gen_error) {
  RowOutcome outcome;
  std::vector<std::string> cells = {
      std::to_string(index),         std::to_string(spec.n),
      std::to_string(spec.m),        fmt(spec.kappa_b),
      fmt(spec.kappa_d),             std::to_string(spec.matrix_id),
      std::to_string(spec.seed),     method,
      std::to_string(o.threads)};
  auto pad_and_write = [&](const std::string& err) {
    while (cells.size() < 23) cells.emplace_back();
    cells.push_back(err);
    os << join_row(cells) << "\n";
  };

  if (!gen_error.empty()) {
    outcome.error = true;
    pad_and_write(gen_error);
    return outcome;
  }

  const int code = method_code(method);
  const mpsvd_matrix* a = mpsvd_problem_a(prob);
  const int64_t n = spec.n;

  SvdHolder solved;
  std::string fallback;
  const double t0 = now_seconds();
  mpsvd_status st;
  int effective = code;
  if (code == -1) {
    st = mpsvd_qr_svd_baseline(a, &solved.r);
  } else {
    st = mpsvd_thin_svd(a, static_cast<mpsvd_eigensolver>(code), o.threads, &solved.r);
    if (st == MPSVD_ERR_NOT_POSITIVE_DEFINITE && code == MPSVD_EIG_GRAM_CHOL_SVD) {
      // harness policy: retry the Cholesky route's failures with the
      // two-sided eigensolver and record the substitution
      fallback = "twosided-jacobi";
      effective = MPSVD_EIG_TWOSIDED_JACOBI;
      st = mpsvd_thin_svd(a, MPSVD_EIG_TWOSIDED_JACOBI, o.threads, &solved.r);
    }
  }
  const double wall = now_seconds() - t0;

  if (st != MPSVD_OK) {
    outcome.error = true;
    pad_and_write(mpsvd_last_error_message());
    return outcome;
  }

  const double kb = mpsvd_problem_realized_kappa_b(prob);
  int64_t count = 0;
  const double* sigma = mpsvd_svd_sigma(solved.r, &count);

  double sv_err = 0.0, orth_u = 0.0, orth_v = 0.0, backward = 0.0;
  int64_t skipped = 0;
  if (mpsvd_max_rel_sv_error(sigma, reference.data(), count, &sv_err) != MPSVD_OK ||
      mpsvd_orth_error(mpsvd_svd_u(solved.r), &orth_u) != MPSVD_OK ||
      mpsvd_orth_error(mpsvd_svd_v(solved.r), &orth_v) != MPSVD_OK ||
      mpsvd_rowwise_backward_error(a, mpsvd_svd_u(solved.r), sigma, count,
                                   mpsvd_svd_v(solved.r), &backward,
                                   &skipped) != MPSVD_OK) {
    outcome.error = true;
    pad_and_write(mpsvd_last_error_message());
    return outcome;
  }

  cells.push_back(fmt(kb));
  cells.push_back(fmt(sv_err));
  cells.push_back(fmt(orth_u));
  cells.push_back(fmt(orth_v));
  cells.push_back(fmt(backward));

  if (code == -1) {
    // no a-priori bound applies to the baseline; metrics are informational
    cells.insert(cells.end(), {"", "", "", "", "", "", ""});
  } else {
    double bound_sv = 0, bound_orth = 0, bound_backward = 0, eps1 = 0;
    int assumption_ok = 0;
    mpsvd_theoretical_bounds(n, kb, static_cast<mpsvd_eigensolver>(effective),
                             &bound_sv, &bound_orth, &bound_backward, &eps1,
                             &assumption_ok);
    const double sv_gate = hard_sv_bound(effective, n, kb);
    const double rn = std::sqrt(static_cast<double>(n));
    const double orth_gate = 100.0 * (rn * kU + static_cast<double>(n) * sv_gate);
    const double backward_gate = 100.0 * rn * kU;
    const bool sv_pass = sv_err <= sv_gate;
    const bool orth_pass = orth_u <= orth_gate;
    const bool backward_pass = backward <= backward_gate;
    outcome.bound_fail = !(sv_pass && orth_pass && backward_pass);
    cells.push_back(fmt(bound_sv));
    cells.push_back(fmt(bound_orth));
    cells.push_back(fmt(bound_backward));
    cells.push_back(sv_pass ? "1" : "0");
    cells.push_back(orth_pass ? "1" : "0");
    cells.push_back(backward_pass ? "1" : "0");
    cells.push_back(assumption_ok ? "1" : "0");
  }
  cells.push_back(fallback);
  cells.push_back(fmt(wall));
  cells.push_back("");
  os << join_row(cells) << "\n";
  return outcome;
}

int run_accuracy(const SuiteOptions& o) {
  if (int rc = validate_common(o)) return rc;
  const std::string out = o.out.empty() ? "accuracy.csv" : o.out;

  std::set<std::string> done;
  bool has_file = false;
  if (o.resume) {
    if (int rc = load_resume_keys(out, kAccuracyHeader, &done, &has_file)) return rc;
  }
  std::ofstream os(out, o.resume && has_file ? std::ios::app : std::ios::trunc);
  if (!os) return usage_error("cannot open output file: " + out);
  if (!(o.resume && has_file)) os << kAccuracyHeader << "\n";

  bool any_error = false, any_fail = false;
  int index = 0;
  for (double kb : o.kappa_b)
    for (double kd : o.kappa_d)
      for (int64_t id : o.matrix_ids) {
        ++index;
        bool all_done = true;
        for (const auto& m : o.methods)
          if (!done.count(std::to_string(index) + "|" + m)) all_done = false;
        if (all_done) continue;

        mpsvd_problem_spec spec;
        spec.n = o.n;
        spec.m = o.n * o.m_ratio;
        spec.kappa_b = kb;
        spec.kappa_d = kd;
        spec.matrix_id = static_cast<int>(id);
        spec.seed = o.seed + static_cast<uint64_t>(index - 1);

        ProblemHolder prob;
        std::string gen_error;
        std::vector<double> reference(static_cast<std::size_t>(o.n));
        if (mpsvd_generate_problem(&spec, &prob.p) != MPSVD_OK)
          gen_error = mpsvd_last_error_message();
        else if (mpsvd_reference_svd(mpsvd_problem_a(prob.p), reference.data(),
                                     o.n) != MPSVD_OK)
          gen_error = mpsvd_last_error_message();

        for (const auto& m : o.methods) {
          if (done.count(std::to_string(index) + "|" + m)) continue;
          const auto rc =
              accuracy_row(os, index, o, spec, prob.p, reference, m, gen_error);
          any_error = any_error || rc.error;
          any_fail = any_fail || rc.bound_fail;
        }
        os.flush();
      }
  return any_error ? kExitSolverError : any_fail ? kExitBoundFail : kExitOk;
}

// ---------------------------------------------------------------------------
// perf suite

const char* kPerfHeader =
    "index,n,m,kappa_b,kappa_d,matrix_id,seed,method,threads,t_gram,t_eigen,"
    "t_compute_u,t_overlap,t_total,rel_time_vs_qr,sync_events,gram_blocks,error";

int run_perf(const SuiteOptions& o) {
  if (int rc = validate_common(o)) return rc;
  const std::string out = o.out.empty() ? "perf.csv" : o.out;
  std::ofstream os(out);
  if (!os) return usage_error("cannot open output file: " + out);
  os << kPerfHeader << "\n";

  // the baseline is timed first so every later row can report its ratio
  std::vector<std::string> methods{"qr-baseline"};
  for (const auto& m : o.methods)
    if (m != "qr-baseline") methods.push_back(m);

  mpsvd_problem_spec spec;
  spec.n = o.n;
  spec.m = o.n * o.m_ratio;
  spec.kappa_b = o.kappa_b.front();
  spec.kappa_d = o.kappa_d.front();
  spec.matrix_id = static_cast<int>(o.matrix_ids.front());
  spec.seed = o.seed;

  ProblemHolder prob;
  if (mpsvd_generate_problem(&spec, &prob.p) != MPSVD_OK) {
    std::cerr << "error: " << mpsvd_last_error_message() << "\n";
    return kExitSolverError;
  }
  const mpsvd_matrix* a = mpsvd_problem_a(prob.p);

  bool any_error = false;
  double qr_total = 0.0;
  int index = 0;
  for (const auto& m : methods) {
    ++index;
    const int code = method_code(m);
    std::vector<std::string> cells = {
        std::to_string(index),      std::to_string(spec.n),
        std::to_string(spec.m),     fmt(spec.kappa_b),
        fmt(spec.kappa_d),          std::to_string(spec.matrix_id),
        std::to_string(spec.seed),  m,
        std::to_string(o.threads)};

    auto solve = [&](mpsvd_svd_result** r) {
      return code == -1 ? mpsvd_qr_svd_baseline(a, r)
                        : mpsvd_thin_svd(a, static_cast<mpsvd_eigensolver>(code),
                                         o.threads, r);
    };

    // one warm-up, then median-of-5 on total time; the run realizing the
    // median contributes the phase breakdown
    mpsvd_status st = MPSVD_OK;
    {
      SvdHolder warm;
      st = solve(&warm.r);
    }
    double times[5][5];
    int sync_events = 0;
    int64_t blocks = 0;
    for (int rep = 0; rep < 5 && st == MPSVD_OK; ++rep) {
      SvdHolder run;
      st = solve(&run.r);
      if (st != MPSVD_OK) break;
      mpsvd_svd_times(run.r, times[rep]);
      sync_events = mpsvd_svd_sync_events(run.r);
      blocks = mpsvd_svd_gram_blocks(run.r);
    }
    if (st != MPSVD_OK) {
      any_error = true;
      while (cells.size() < 17) cells.emplace_back();
      cells.push_back(mpsvd_last_error_message());
      os << join_row(cells) << "\n";
      continue;
    }

    int order[5] = {0, 1, 2, 3, 4};
    std::sort(order, order + 5,
              [&](int x, int y) { return times[x][4] < times[y][4]; });
    const double* med = times[order[2]];
    if (code == -1) qr_total = med[4];

    for (int i = 0; i < 5; ++i) cells.push_back(fmt(med[i]));
    cells.push_back(qr_total > 0.0 ? fmt(med[4] / qr_total) : "");
    cells.push_back(std::to_string(sync_events));
    cells.push_back(std::to_string(blocks));
    cells.push_back("");
    os << join_row(cells) << "\n";
  }
  return any_error ? kExitSolverError : kExitOk;
}

// ---------------------------------------------------------------------------
// gen

int write_matrix_or_fail(const std::string& path, const mpsvd_matrix* m) {
  if (mpsvd_matrix_write_file(path.c_str(), m) != MPSVD_OK) {
    std::cerr << "error: " << mpsvd_last_error_message() << "\n";
    return kExitSolverError;
  }
  return kExitOk;
}

int write_column_or_fail(const std::string& path, const double* v, int64_t n) {
  mpsvd_matrix* m = nullptr;
  if (mpsvd_matrix_create(n, 1, MPSVD_PRECISION_HIGHER, &m) != MPSVD_OK)
    return kExitSolverError;
  for (int64_t i = 0; i < n; ++i) mpsvd_matrix_set(m, i, 0, v[i]);
  const int rc = write_matrix_or_fail(path, m);
  mpsvd_matrix_destroy(m);
  return rc;
}

int run_gen(const SuiteOptions& o) {
  if (int rc = validate_common(o)) return rc;
  if (o.kappa_b.size() != 1 || o.kappa_d.size() != 1 || o.matrix_ids.size() != 1)
    return usage_error("gen takes exactly one kappa-b, kappa-d, and matrix id");
  const std::string dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return usage_error("cannot create output directory: " + dir);

  mpsvd_problem_spec spec;
  spec.n = o.n;
  spec.m = o.n * o.m_ratio;
  spec.kappa_b = o.kappa_b.front();
  spec.kappa_d = o.kappa_d.front();
  spec.matrix_id = static_cast<int>(o.matrix_ids.front());
  spec.seed = o.seed;

  ProblemHolder prob;
  if (mpsvd_generate_problem(&spec, &prob.p) != MPSVD_OK) {
    std::cerr << "error: " << mpsvd_last_error_message() << "\n";
    return kExitSolverError;
  }

  const auto path = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  int64_t nd = 0, ns = 0;
  const double* d = mpsvd_problem_d(prob.p, &nd);
  const double* sref = mpsvd_problem_sigma_ref(prob.p, &ns);
  if (int rc = write_matrix_or_fail(path("A.txt"), mpsvd_problem_a(prob.p))) return rc;
  if (int rc = write_matrix_or_fail(path("B.txt"), mpsvd_problem_b(prob.p))) return rc;
  if (int rc = write_column_or_fail(path("D.txt"), d, nd)) return rc;
  if (int rc = write_column_or_fail(path("sigma_ref.txt"), sref, ns)) return rc;

  std::ofstream meta(path("metadata.txt"));
  if (!meta) return usage_error("cannot write metadata file");
  meta << "m=" << spec.m << "\n"
       << "n=" << spec.n << "\n"
       << "kappa_b=" << fmt(spec.kappa_b) << "\n"
       << "kappa_d=" << fmt(spec.kappa_d) << "\n"
       << "matrix_id=" << spec.matrix_id << "\n"
       << "seed=" << spec.seed << "\n"
       << "realized_kappa_b=" << fmt(mpsvd_problem_realized_kappa_b(prob.p)) << "\n";
  return kExitOk;
}

void add_common_options(CLI::App* cmd, SuiteOptions* o) {
  cmd->add_option("--config", o->config,
                  "key=value config file; command-line flags override");
  cmd->add_option("--n", o->n, "column count");
  cmd->add_option("--m-ratio", o->m_ratio, "rows = m-ratio * n");
  cmd->add_option("--kappa-b", o->kappa_b, "target condition numbers for B")
      ->delimiter(',');
  cmd->add_option("--kappa-d", o->kappa_d, "target condition numbers for D")
      ->delimiter(',');
  cmd->add_option("--matrix-ids", o->matrix_ids, "profile ids in 1..16")
      ->delimiter(',');
  cmd->add_option("--eigensolver", o->methods,
                  "twosided-jacobi|gram-chol-svd|onesided-jacobi-gram|qr-baseline")
      ->delimiter(',');
  cmd->add_option("--seed", o->seed, "base seed");
  cmd->add_option("--threads", o->threads, "Gram-phase worker threads");
  cmd->add_option("--out", o->out, "output file (suites) or directory (gen)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed precision Gram-based thin SVD harness"};
  app.require_subcommand(1);

  SuiteOptions gen_o, acc_o, perf_o;
  acc_o.methods = {"twosided-jacobi", "gram-chol-svd", "onesided-jacobi-gram",
                   "qr-baseline"};
  perf_o.methods = acc_o.methods;

  auto* gen = app.add_subcommand("gen", "write one generated test problem to disk");
  add_common_options(gen, &gen_o);
  auto* acc = app.add_subcommand("accuracy", "run the accuracy suite to CSV");
  add_common_options(acc, &acc_o);
  acc->add_flag("--resume", acc_o.resume, "append rows missing from an existing CSV");
  auto* perf = app.add_subcommand("perf", "run the timing suite to CSV");
  add_common_options(perf, &perf_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (int rc = apply_config(*gen, &gen_o)) return rc;
      return run_gen(gen_o);
    }
    if (acc->parsed()) {
      if (int rc = apply_config(*acc, &acc_o)) return rc;
      return run_accuracy(acc_o);
    }
    if (int rc = apply_config(*perf, &perf_o)) return rc;
    return run_perf(perf_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}
