// Seedable, portable random stream for the matrix generator.
//
// Generator: xoshiro256++ (Blackman & Vigna), state expanded from the 64-bit
// seed with SplitMix64.  Stream splitting is by construction, not by jumping:
// substream k of seed s is a fresh generator seeded with
//     splitmix64_step(s + (k + 1) * 0x9E3779B97F4A7C15),
// so any (seed, stream) pair names the same sequence on every platform.
// The generator and the integer-to-real mappings below are exact integer
// arithmetic; Gaussian deviates go through Box-Muller and therefore inherit
// the platform libm's log/sin/cos rounding in the last ulp.

#pragma once

#include <cstdint>

namespace mpsvd {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent child stream; depends only on the seed this Rng was created
  // with (not on how many draws were made), so derive substreams up front.
  Rng substream(std::uint64_t stream) const;

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1): midpoints (k + 1/2) * 2^-53.
  double uniform_open01();

  // Standard normal via Box-Muller on (0,1] x [0,1); pairs are generated
  // together and the spare is returned on the next call.
  double gaussian();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t s_[4] = {0, 0, 0, 0};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mpsvd
