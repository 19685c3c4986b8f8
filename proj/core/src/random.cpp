#include "arminer/random.hpp"

#include <cmath>

namespace arminer {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint64_t Rng::poisson(double mean) {
  // A sum of independent Poisson variables is Poisson; splitting keeps
  // exp(-mean) well away from underflow.
  std::uint64_t total = 0;
  while (mean > 30.0) {
    total += poisson(30.0);
    mean -= 30.0;
  }
  if (mean <= 0.0) return total;
  const double threshold = std::exp(-mean);
  std::uint64_t k = 0;
  double product = uniform01();
  while (product > threshold) {
    ++k;
    product *= uniform01();
  }
  return total + k;
}

}  // namespace arminer
