#include "slcogarch/rng.hpp"

#include <cmath>

namespace slcogarch {

double Rng::normal() {
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Rng::knuth_poisson(double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01();
  } while (p > limit);
  return k - 1;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  std::uint64_t total = 0;
  while (mean > kPoissonSplit) {
    total += knuth_poisson(kPoissonSplit);
    mean -= kPoissonSplit;
  }
  return total + knuth_poisson(mean);
}

}  // namespace slcogarch
