#include "slcogarch/semi_levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slcogarch {

void SemiLevyConfig::validate() const {
  const int d = partition_count();
  if (d < 1) throw std::invalid_argument("config: need at least one interval");
  if (!(period_tau > 0.0))
    throw std::invalid_argument("config: period must be positive");
  if (static_cast<int>(rates.size()) != d ||
      static_cast<int>(jump_dists.size()) != d)
    throw std::invalid_argument(
        "config: lengths, rates and jump_dists must have equal size");
  double sum = 0.0;
  for (double l : lengths) {
    if (!(l > 0.0))
      throw std::invalid_argument("config: interval lengths must be positive");
    sum += l;
  }
  for (double r : rates)
    if (!(r >= 0.0))
      throw std::invalid_argument("config: rates must be non-negative");
  for (const auto& f : jump_dists)
    if (!f) throw std::invalid_argument("config: missing jump distribution");
  if (std::abs(sum - period_tau) > 1e-12 * std::abs(period_tau))
    throw std::invalid_argument("config: interval lengths must sum to tau");
}

std::vector<double> SemiLevyConfig::boundaries() const {
  std::vector<double> s(lengths.size() + 1, 0.0);
  for (std::size_t j = 0; j < lengths.size(); ++j) s[j + 1] = s[j] + lengths[j];
  return s;
}

double SemiLevyConfig::period_mass() const {
  double mass = 0.0;
  for (std::size_t j = 0; j < lengths.size(); ++j)
    mass += rates[j] * lengths[j];
  return mass;
}

PhaseLocation locate_phase(double t, const SemiLevyConfig& cfg) {
  if (t < 0.0) throw std::domain_error("locate_phase: negative time");
  const int d = cfg.partition_count();
  if (t == 0.0) return PhaseLocation{0, 1, 0.0};

  long m = static_cast<long>(std::floor(t / cfg.period_tau));
  double u = t - static_cast<double>(m) * cfg.period_tau;
  if (u <= 0.0 && m >= 1) {
    // Exact period boundary: the point belongs to the last interval of the
    // previous period.
    return PhaseLocation{m - 1, d, t - cfg.lengths[d - 1]};
  }

  double cum = 0.0;
  for (int j = 1; j < d; ++j) {
    const double next = cum + cfg.lengths[j - 1];
    if (u <= next)
      return PhaseLocation{m, j, static_cast<double>(m) * cfg.period_tau + cum};
    cum = next;
  }
  return PhaseLocation{m, d, static_cast<double>(m) * cfg.period_tau + cum};
}

double intensity(double t, const SemiLevyConfig& cfg) {
  if (t < 0.0) throw std::domain_error("intensity: negative time");
  return cfg.rates[locate_phase(t, cfg).partition_index - 1];
}

double cumulative_intensity(double t, const SemiLevyConfig& cfg) {
  if (t < 0.0) throw std::domain_error("cumulative_intensity: negative time");
  if (t == 0.0) return 0.0;
  const PhaseLocation loc = locate_phase(t, cfg);
  double value = static_cast<double>(loc.completed_periods) * cfg.period_mass();
  for (int j = 1; j < loc.partition_index; ++j)
    value += cfg.rates[j - 1] * cfg.lengths[j - 1];
  value += cfg.rates[loc.partition_index - 1] * (t - loc.interval_start);
  return value;
}

JumpPath simulate_arrivals(const SemiLevyConfig& cfg, long periods, Rng& rng) {
  cfg.validate();
  if (periods < 1)
    throw std::invalid_argument("simulate_arrivals: need at least one period");
  const int d = cfg.partition_count();
  const std::vector<double> s = cfg.boundaries();

  // Step 1: one Poisson count per interval, interval order.
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(periods) * d);
  for (long k = 0; k < periods; ++k)
    for (int j = 0; j < d; ++j)
      counts.push_back(rng.poisson(cfg.rates[j] * cfg.lengths[j]));

  // Step 2: uniform positions on each interval, same order.
  JumpPath path;
  path.config = cfg;
  path.horizon = static_cast<double>(periods) * cfg.period_tau;
  std::size_t total = 0;
  for (auto c : counts) total += c;
  path.arrivals.reserve(total);
  std::size_t idx = 0;
  for (long k = 0; k < periods; ++k) {
    const double offset = static_cast<double>(k) * cfg.period_tau;
    for (int j = 0; j < d; ++j, ++idx) {
      const double lo = offset + s[j];
      const double hi = offset + s[j + 1];
      for (std::uint64_t c = 0; c < counts[idx]; ++c)
        path.arrivals.push_back(rng.uniform_left_open(lo, hi));
    }
  }
  std::stable_sort(path.arrivals.begin(), path.arrivals.end());
  return path;
}

void simulate_jumps(JumpPath& path, Rng& rng) {
  path.jumps.clear();
  path.jumps.reserve(path.arrivals.size());
  for (double t : path.arrivals) {
    const int r = locate_phase(t, path.config).partition_index;
    path.jumps.push_back(path.config.jump_dists[r - 1]->sample(rng));
  }
}

JumpPath simulate_driver(const SemiLevyConfig& cfg, long periods, Rng& rng) {
  JumpPath path = simulate_arrivals(cfg, periods, rng);
  simulate_jumps(path, rng);
  return path;
}

namespace {
std::size_t count_upto(double t, const std::vector<double>& arrivals) {
  return static_cast<std::size_t>(
      std::upper_bound(arrivals.begin(), arrivals.end(), t) -
      arrivals.begin());
}
}  // namespace

double evaluate_S(double t, const JumpPath& path) {
  if (t < 0.0 || t > path.horizon)
    throw std::domain_error("evaluate_S: time outside [0, horizon]");
  if (path.jumps.size() != path.arrivals.size())
    throw std::invalid_argument("evaluate_S: jump sizes not drawn yet");
  double value = path.config.drift_delta * t;
  const std::size_t n = count_upto(t, path.arrivals);
  for (std::size_t i = 0; i < n; ++i) value += path.jumps[i];
  return value;
}

double quadratic_variation(double t, const JumpPath& path) {
  if (t < 0.0 || t > path.horizon)
    throw std::domain_error("quadratic_variation: time outside [0, horizon]");
  if (path.jumps.size() != path.arrivals.size())
    throw std::invalid_argument(
        "quadratic_variation: jump sizes not drawn yet");
  double value = 0.0;
  const std::size_t n = count_upto(t, path.arrivals);
  for (std::size_t i = 0; i < n; ++i) value += path.jumps[i] * path.jumps[i];
  return value;
}

std::complex<double> char_function(double u, double t,
                                   const SemiLevyConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("char_function: need t > 0");
  const PhaseLocation loc = locate_phase(t, cfg);
  const int d = cfg.partition_count();
  const double m = static_cast<double>(loc.completed_periods);

  std::complex<double> exponent(0.0, u * cfg.drift_delta * t);
  for (int j = 1; j <= d; ++j) {
    double mass = (j < loc.partition_index ? m + 1.0 : m) * cfg.rates[j - 1] *
                  cfg.lengths[j - 1];
    if (j == loc.partition_index)
      mass += cfg.rates[j - 1] * (t - loc.interval_start);
    if (mass == 0.0) continue;
    exponent += mass * (cfg.jump_dists[j - 1]->char_function(u) - 1.0);
  }
  return std::exp(exponent);
}

}  // namespace slcogarch
