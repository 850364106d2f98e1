// Test problem generator: A = B * diag(d) with B built to have unit-norm
// columns and a prescribed singular spectrum, both diagonals drawn from the
// classic five test-distribution modes.
//
// Everything runs at Higher precision; only the final A is cast down.  All
// randomness flows through Rng substreams of the problem seed (0: left
// orthogonal factor, 1: right orthogonal factor, 2: mode-5 draws for d,
// 3: mode-5 draws for sigma), so a TestMatrixSpec names its problem uniquely.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpsvd/rng.hpp"
#include "mpsvd/types.hpp"

namespace mpsvd {

// One diagonal distribution: mode 1..5 plus its condition number kappa >= 1.
struct DiagMode {
  int mode = 1;
  double kappa = 1.0;
};

struct TestMatrixSpec {
  index_t m = 0;
  index_t n = 0;
  double kappa_d = 1.0;
  double kappa_b = 1.0;
  int matrix_id = 1;  // 1..16, maps to (mode of d, mode of sigma)
  std::uint64_t seed = 0;
};

struct EquilibrationStats {
  int rotations = 0;
  // Largest |column norm^2 - 1| in the generator's exact bookkeeping when the
  // rotation loop stopped (the 4*u_h termination quantity).
  double max_abs_deviation = 0.0;
};

struct GeneratedProblem {
  DenseMatrix a;                  // Working, = cast(B * diag(d)) entrywise
  DenseMatrix b;                  // Higher, unit-norm columns
  DiagMatrix d;                   // Higher
  std::vector<double> sigma_ref;  // descending sigma of B*diag(d) at Higher
  double realized_kappa_b = 1.0;  // max/min of the renormalized sigma of B
  TestMatrixSpec spec;
};

// Diagonal entries in [1/kappa, 1], descending for modes 1-4:
//   1: d(1)=1, rest 1/kappa          2: all 1 except d(n)=1/kappa
//   3: geometric kappa^(-(i-1)/(n-1))  4: arithmetic from 1 down to 1/kappa
//   5: kappa^(-r), r uniform on (0,1)
// Modes 3-4 need n >= 2.  Only mode 5 consumes the rng.
std::vector<double> diag_from_mode(const DiagMode& dm, index_t n, Rng& rng);

// Q factor of an m x n standard Gaussian matrix with R's diagonal signs
// absorbed, which makes the distribution Haar and the m=n=1 case exactly
// [[1]].
DenseMatrix haar_orthonormal(index_t m, index_t n, Rng& rng);

// B = W1 * diag(gamma*sigma) * W2^T followed by two-column Givens rotations
// until every column norm is 1 within 4*u_h (exact-bookkeeping deviations;
// see EquilibrationStats).  gamma rescales sigma so sum(gamma^2 sigma^2) = n,
// the trace identity unit columns require.  Rotations are orthogonal, so the
// singular values stay gamma*sigma up to O(n*u_h) relative.
DenseMatrix unit_norm_column_matrix(const std::vector<double>& sigma, index_t m,
                                    Rng& rng,
                                    EquilibrationStats* stats = nullptr);

// The 16-entry id table pairing a mode for d with a mode for sigma.
std::pair<int, int> matrix_id_to_modes(int matrix_id);

// d, sigma, B from the requested modes and seed; A = cast(B*diag(d), Working);
// sigma_ref from the Higher-precision one-sided Jacobi run on B*diag(d).
// A pure function of its TestMatrixSpec argument.
GeneratedProblem build_problem(const TestMatrixSpec& spec);

}  // namespace mpsvd
