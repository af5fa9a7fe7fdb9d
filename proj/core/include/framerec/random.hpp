#pragma once

// Portable seeded random source. std::mt19937_64's output sequence is fixed
// by the standard; the distributions below are written out so that results
// do not depend on the standard library implementation.

#include <cstdint>
#include <random>

namespace framerec {

// SplitMix64 step; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace framerec
