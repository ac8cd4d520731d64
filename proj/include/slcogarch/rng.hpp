#pragma once

#include <cstdint>
#include <random>

namespace slcogarch {

// Seeded random stream shared by all simulation entry points.
//
// The draw order is part of the reproducibility contract: each sampler
// consumes engine words in a fixed, documented pattern (uniform: one word,
// normal: two words, poisson: a data-dependent count derived solely from the
// uniform stream), so a simulation is bit-identical for a given seed.
// std::random distributions are avoided deliberately; their algorithms are
// implementation-defined and differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * kInv53;
  }

  // Uniform on the half-open interval (a, b].
  double uniform_left_open(double a, double b) {
    return b - (b - a) * uniform01();
  }

  // Standard normal via the basic Box-Muller transform: two uniforms per
  // draw, no spare caching.
  double normal();

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Poisson count by Knuth's product-of-uniforms method.  Means above
  // kPoissonSplit are generated as independent additive pieces so the
  // exp(-mean) factor cannot underflow.
  std::uint64_t poisson(double mean);

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  static constexpr double kPoissonSplit = 60.0;

  std::uint64_t knuth_poisson(double mean);

  std::mt19937_64 engine_;
};

}  // namespace slcogarch
