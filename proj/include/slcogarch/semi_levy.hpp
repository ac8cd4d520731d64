#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "slcogarch/jump_distributions.hpp"
#include "slcogarch/rng.hpp"

namespace slcogarch {

// Full law of the driving process: a compound Poisson process whose jump
// intensity and jump-size distribution are periodic in time with period tau,
// plus a linear drift.  The period is split into d consecutive intervals
// A_j = (s_{j-1}, s_j] of the given lengths; interval j carries Poisson rate
// rates[j] and jump law jump_dists[j].
struct SemiLevyConfig {
  double period_tau = 0.0;
  std::vector<double> lengths;
  std::vector<double> rates;
  std::vector<std::shared_ptr<const JumpDistribution>> jump_dists;
  double drift_delta = 0.0;

  int partition_count() const { return static_cast<int>(lengths.size()); }

  // Throws std::invalid_argument unless: d >= 1, every length positive,
  // every rate non-negative, one jump law per interval, and the lengths sum
  // to tau within 1e-12 relative.
  void validate() const;

  // Interval boundaries within one period: s_0 = 0, ..., s_d = sum lengths.
  std::vector<double> boundaries() const;

  // Expected jump count per period: sum_j rates[j] * lengths[j].
  double period_mass() const;
};

// Position of a time point inside the periodic partition.  Intervals are
// half-open on the left: t = s_j belongs to A_j, and t = 0 is assigned to
// the first interval.  At an exact period boundary t = k*tau the convention
// is r = d, m = k - 1 (both index choices give the same measures).
struct PhaseLocation {
  long completed_periods = 0;  // m = floor(t / tau), adjusted at boundaries
  int partition_index = 1;     // r in 1..d
  double interval_start = 0;   // absolute left endpoint of the interval
};

PhaseLocation locate_phase(double t, const SemiLevyConfig& cfg);

// lambda(t): the Poisson rate in force at time t.  Negative t is a domain
// error.
double intensity(double t, const SemiLevyConfig& cfg);

// Lambda(t) = integral of lambda over [0, t], evaluated exactly from the
// piecewise-linear structure: full periods, completed intervals, and the
// partial interval containing t.
double cumulative_intensity(double t, const SemiLevyConfig& cfg);

// One realisation of the driver over [0, horizon]: ordered arrival times
// with their jump sizes.
struct JumpPath {
  SemiLevyConfig config;
  std::vector<double> arrivals;
  std::vector<double> jumps;
  double horizon = 0.0;
};

// Draws arrival times over `periods` full periods.  One Poisson count per
// interval (interval order), then that many uniform positions on each
// (s_{i-1}, s_i] (again interval order), then a stable ascending sort.
// Jump sizes are left empty.
JumpPath simulate_arrivals(const SemiLevyConfig& cfg, long periods, Rng& rng);

// Fills jump sizes: Z_n is drawn from the law of the interval containing
// arrival n, in arrival order.
void simulate_jumps(JumpPath& path, Rng& rng);

// simulate_arrivals followed by simulate_jumps on the same stream.
JumpPath simulate_driver(const SemiLevyConfig& cfg, long periods, Rng& rng);

// S_t = delta * t + sum of jumps with arrival <= t.  t beyond the horizon is
// a domain error.
double evaluate_S(double t, const JumpPath& path);

// Quadratic variation [S,S]_t: sum of squared jumps with arrival <= t.
double quadratic_variation(double t, const JumpPath& path);

// E exp(iu S_t) in closed form.  The jump measure over [0, t] is finite, so
// the compensated representation collapses to
//   exp(iu delta t + sum_j w_j (phi_j(u) - 1))
// where w_j aggregates the rate mass each interval family contributes up to
// time t.
std::complex<double> char_function(double u, double t,
                                   const SemiLevyConfig& cfg);

}  // namespace slcogarch
