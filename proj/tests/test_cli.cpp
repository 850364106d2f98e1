// Black-box tests for the command line harness.  Every case launches the
// installed binary (path injected as MPSVD_CLI_PATH) as a subprocess and
// inspects exit codes and emitted files only; generated matrices are read
// back through the shared-library C API like any external consumer would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mpsvd.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string(MPSVD_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Fresh directory under the system temp root, removed on scope exit.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("mpsvd_cli_test_" + std::to_string(getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

constexpr const char* kAccuracyHeader =
    "index,n,m,kappa_b,kappa_d,matrix_id,seed,method,threads,realized_kappa_b,"
    "max_rel_sv_err,orth_u,orth_v,rowwise_backward_max,bound_sv,bound_orth,"
    "bound_backward,sv_pass,orth_pass,backward_pass,assumption_ok,fallback,"
    "wall_time_s,error";

constexpr const char* kPerfHeader =
    "index,n,m,kappa_b,kappa_d,matrix_id,seed,method,threads,t_gram,t_eigen,"
    "t_compute_u,t_overlap,t_total,rel_time_vs_qr,sync_events,gram_blocks,error";

// Column indices into an accuracy row (0-based).
enum {
  kColIndex = 0,
  kColN = 1,
  kColKappaB = 3,
  kColMethod = 7,
  kColThreads = 8,
  kColBoundSv = 14,
  kColSvPass = 17,
  kColOrthPass = 18,
  kColBackwardPass = 19,
  kColAssumption = 20,
  kColFallback = 21,
  kColWall = 22,
  kColError = 23,
  kAccuracyCols = 24,
  kPerfCols = 18,
};

// Parses a CSV file into rows of cells and checks the header plus a uniform
// cell count, which guards against column drift in either direction.
std::vector<std::vector<std::string>> load_csv(const std::filesystem::path& p,
                                               const char* header, int cols) {
  const auto lines = split_lines(read_file(p));
  REQUIRE(!lines.empty());
  CHECK(lines[0] == header);
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    rows.push_back(split_csv(lines[i]));
    CHECK(rows.back().size() == static_cast<size_t>(cols));
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  TempDir dir;
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required

  auto r = run_cli("accuracy --n 8 --m-ratio 2 --matrix-ids 17 --out " +
                   dir.file("x.csv"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("1..16") != std::string::npos);

  r = run_cli("accuracy --n 8 --eigensolver nosuch --out " + dir.file("x.csv"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("nosuch") != std::string::npos);

  CHECK(run_cli("accuracy --n 1 --out " + dir.file("x.csv")).exit_code == 2);
  CHECK(run_cli("accuracy --n 8 --threads 0 --out " + dir.file("x.csv")).exit_code == 2);
  CHECK(run_cli("accuracy --n 8 --kappa-b 0.5 --out " + dir.file("x.csv")).exit_code == 2);
  // gen describes a single problem, so the list options must be scalar
  CHECK(run_cli("gen --n 8 --kappa-b 1,10 --out " + dir.file("g")).exit_code == 2);

  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("gen writes a deterministic, loadable problem") {
  TempDir dir;
  const std::string args =
      "gen --n 8 --m-ratio 3 --kappa-b 100 --kappa-d 10 --matrix-ids 9 --seed 4";
  CHECK(run_cli(args + " --out " + dir.file("p1")).exit_code == 0);
  CHECK(run_cli(args + " --out " + dir.file("p2")).exit_code == 0);

  for (const char* name : {"A.txt", "B.txt", "D.txt", "sigma_ref.txt",
                           "metadata.txt"}) {
    const auto f1 = dir.path / "p1" / name;
    const auto f2 = dir.path / "p2" / name;
    REQUIRE(std::filesystem::exists(f1));
    CHECK(read_file(f1) == read_file(f2));  // same seed, same bytes
  }

  // a different seed must change the sampled data
  CHECK(run_cli("gen --n 8 --m-ratio 3 --kappa-b 100 --kappa-d 10 "
                "--matrix-ids 9 --seed 5 --out " + dir.file("p3"))
            .exit_code == 0);
  CHECK(read_file(dir.path / "p1" / "A.txt") !=
        read_file(dir.path / "p3" / "A.txt"));

  const std::string meta = read_file(dir.path / "p1" / "metadata.txt");
  CHECK(meta.find("m=24\n") != std::string::npos);
  CHECK(meta.find("n=8\n") != std::string::npos);
  CHECK(meta.find("matrix_id=9\n") != std::string::npos);
  // profile 9 hits its target condition number exactly
  CHECK(meta.find("realized_kappa_b=100\n") != std::string::npos);

  // the emitted matrices round-trip through the library loader
  mpsvd_matrix* a = nullptr;
  REQUIRE(mpsvd_matrix_read_file((dir.path / "p1" / "A.txt").c_str(), &a) ==
          MPSVD_OK);
  CHECK(mpsvd_matrix_rows(a) == 24);
  CHECK(mpsvd_matrix_cols(a) == 8);
  CHECK(mpsvd_matrix_precision(a) == MPSVD_PRECISION_WORKING);
  mpsvd_matrix_destroy(a);

  mpsvd_matrix* sref = nullptr;
  REQUIRE(mpsvd_matrix_read_file((dir.path / "p1" / "sigma_ref.txt").c_str(),
                                 &sref) == MPSVD_OK);
  CHECK(mpsvd_matrix_rows(sref) == 8);
  CHECK(mpsvd_matrix_cols(sref) == 1);
  double prev = 0.0;
  for (int64_t i = 0; i < 8; ++i) {
    double v = 0.0;
    REQUIRE(mpsvd_matrix_get(sref, i, 0, &v) == MPSVD_OK);
    CHECK(v > 0.0);
    if (i > 0) CHECK(v <= prev);  // reference spectrum arrives sorted
    prev = v;
  }
  mpsvd_matrix_destroy(sref);
}

TEST_CASE("accuracy suite: schema, benign-grid passes, and determinism") {
  TempDir dir;
  const std::string args =
      "accuracy --n 32 --m-ratio 4 --kappa-b 1,10 --kappa-d 1,100 "
      "--matrix-ids 1,2 --seed 1";
  CHECK(run_cli(args + " --out " + dir.file("a1.csv")).exit_code == 0);

  const auto rows = load_csv(dir.file("a1.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows.size() == 32);  // 2 kappa_b x 2 kappa_d x 2 ids x 4 methods

  const char* method_order[4] = {"twosided-jacobi", "gram-chol-svd",
                                 "onesided-jacobi-gram", "qr-baseline"};
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r[kColIndex] == std::to_string(i / 4 + 1));
    CHECK(r[kColMethod] == method_order[i % 4]);
    CHECK(r[kColError].empty());
    CHECK(r[kColFallback].empty());
    if (r[kColMethod] == "qr-baseline") {
      // no a-priori bound applies to the baseline
      for (int c = kColBoundSv; c <= kColAssumption; ++c) CHECK(r[c].empty());
    } else {
      CHECK(r[kColSvPass] == "1");
      CHECK(r[kColOrthPass] == "1");
      CHECK(r[kColBackwardPass] == "1");
      CHECK(r[kColAssumption] == "1");
    }
  }
  // the sweep is kappa_b-major: first half kappa_b=1, second half 10
  CHECK(rows[0][kColKappaB] == "1");
  CHECK(rows[16][kColKappaB] == "10");

  // identical invocation: every cell but the wall clock is reproduced
  CHECK(run_cli(args + " --out " + dir.file("a2.csv")).exit_code == 0);
  const auto rows2 = load_csv(dir.file("a2.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows2.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < kAccuracyCols; ++c)
      if (c != kColWall) CHECK(rows[i][c] == rows2[i][c]);

  // more worker threads: numbers are bitwise identical, only the recorded
  // thread count (and timing) may differ
  CHECK(run_cli(args + " --threads 2 --out " + dir.file("a3.csv")).exit_code == 0);
  const auto rows3 = load_csv(dir.file("a3.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows3.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows3[i][kColThreads] == "2");
    for (int c = 0; c < kAccuracyCols; ++c)
      if (c != kColWall && c != kColThreads) CHECK(rows[i][c] == rows3[i][c]);
  }
}

TEST_CASE("accuracy suite records solver failures and keeps going") {
  TempDir dir;
  // at this conditioning the Gram matrix is numerically indefinite, so the
  // Cholesky route and its two-sided retry both fail; the second, benign
  // instance must still be solved afterwards
  auto r = run_cli(
      "accuracy --n 32 --m-ratio 8 --kappa-b 1e+14,1 --kappa-d 1 "
      "--matrix-ids 5 --eigensolver gram-chol-svd --seed 2 --out " +
      dir.file("err.csv"));
  CHECK(r.exit_code == 3);

  const auto rows = load_csv(dir.file("err.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][kColKappaB] == "1e+14");
  CHECK(rows[0][kColError].find("not positive definite") != std::string::npos);
  for (int c = kColThreads + 1; c < kColError; ++c) CHECK(rows[0][c].empty());
  CHECK(rows[1][kColKappaB] == "1");
  CHECK(rows[1][kColError].empty());
  CHECK(rows[1][kColSvPass] == "1");
}

TEST_CASE("perf suite: baseline first, ratios, phase partition") {
  TempDir dir;
  CHECK(run_cli("perf --n 32 --m-ratio 4 --kappa-b 10 --kappa-d 1 "
                "--matrix-ids 1 --seed 1 --out " + dir.file("p.csv"))
            .exit_code == 0);

  const auto rows = load_csv(dir.file("p.csv"), kPerfHeader, kPerfCols);
  REQUIRE(rows.size() == 4);
  // the baseline always runs first so later rows can report a ratio to it
  CHECK(rows[0][kColMethod] == "qr-baseline");
  CHECK(rows[0][9] == "0");    // no Gram phase in the baseline
  CHECK(rows[0][14] == "1");   // its ratio to itself
  CHECK(rows[0][15] == "0");   // and no synchronization events
  CHECK(rows[1][kColMethod] == "twosided-jacobi");
  CHECK(rows[2][kColMethod] == "gram-chol-svd");
  CHECK(rows[3][kColMethod] == "onesided-jacobi-gram");

  for (const auto& r : rows) {
    CHECK(r[17].empty());  // no errors
    const double t_gram = strtod(r[9].c_str(), nullptr);
    const double t_eigen = strtod(r[10].c_str(), nullptr);
    const double t_u = strtod(r[11].c_str(), nullptr);
    const double t_overlap = strtod(r[12].c_str(), nullptr);
    const double t_total = strtod(r[13].c_str(), nullptr);
    CHECK(t_total > 0.0);
    CHECK(t_gram + t_eigen + t_u + t_overlap ==
          doctest::Approx(t_total).epsilon(1e-6));
    CHECK(strtod(r[14].c_str(), nullptr) > 0.0);
    if (r[kColMethod] != "qr-baseline") {
      CHECK(r[15] == "1");   // single synchronization joining the Gram blocks
      CHECK(r[16] == "16");  // block count pinned independent of threads
    }
  }
}

TEST_CASE("resume appends exactly the missing rows") {
  TempDir dir;
  const std::string base =
      "accuracy --n 16 --m-ratio 2 --kappa-b 1,10 --kappa-d 1 --matrix-ids 1 "
      "--seed 1 --out " + dir.file("r.csv");
  CHECK(run_cli(base + " --eigensolver twosided-jacobi").exit_code == 0);
  const std::string first = read_file(dir.file("r.csv"));
  CHECK(split_lines(first).size() == 3);  // header + 2 instances x 1 method

  // a second method joins the sweep: old rows must be byte-identical,
  // new rows appended for the missing method only
  CHECK(run_cli(base + " --resume --eigensolver twosided-jacobi,gram-chol-svd")
            .exit_code == 0);
  const std::string second = read_file(dir.file("r.csv"));
  CHECK(second.compare(0, first.size(), first) == 0);
  const auto rows = load_csv(dir.file("r.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows.size() == 4);
  CHECK(rows[2][kColMethod] == "gram-chol-svd");
  CHECK(rows[3][kColMethod] == "gram-chol-svd");
  CHECK(rows[2][kColIndex] == "1");
  CHECK(rows[3][kColIndex] == "2");

  // nothing missing: a further resume leaves the file untouched
  CHECK(run_cli(base + " --resume --eigensolver twosided-jacobi,gram-chol-svd")
            .exit_code == 0);
  CHECK(read_file(dir.file("r.csv")) == second);

  // refusing to append to a file with a different schema
  std::ofstream(dir.file("bogus.csv")) << "foo,bar\n1,2\n";
  auto r = run_cli("accuracy --n 16 --m-ratio 2 --resume --out " +
                   dir.file("bogus.csv"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("schema") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override") {
  TempDir dir;
  std::ofstream(dir.file("run.cfg"))
      << "# suite shape\nn=16\nm-ratio=2\n\nkappa-b=10\nkappa-d=1\nmatrix-ids=1\n"
      << "eigensolver=twosided-jacobi\nseed=3\n";

  CHECK(run_cli("accuracy --config " + dir.file("run.cfg") + " --out " +
                dir.file("c1.csv"))
            .exit_code == 0);
  auto rows = load_csv(dir.file("c1.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][kColN] == "16");
  CHECK(rows[0][kColMethod] == "twosided-jacobi");

  CHECK(run_cli("accuracy --config " + dir.file("run.cfg") + " --n 24 --out " +
                dir.file("c2.csv"))
            .exit_code == 0);
  rows = load_csv(dir.file("c2.csv"), kAccuracyHeader, kAccuracyCols);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][kColN] == "24");

  // malformed config files are usage errors
  std::ofstream(dir.file("bad1.cfg")) << "no-such-key=1\n";
  auto r = run_cli("accuracy --config " + dir.file("bad1.cfg"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("no-such-key") != std::string::npos);

  std::ofstream(dir.file("bad2.cfg")) << "n=sixteen\n";
  CHECK(run_cli("accuracy --config " + dir.file("bad2.cfg")).exit_code == 2);
  CHECK(run_cli("accuracy --config " + dir.file("missing.cfg")).exit_code == 2);
}
