#pragma once

#include <cstdint>
#include <random>

namespace arminer {

// Portable deterministic random source. std::mt19937_64's output sequence is
// fixed by the standard; the distributions below are implemented here rather
// than taken from <random>, whose algorithms vary between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  // Poisson(mean) by Knuth's product-of-uniforms method.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace arminer
