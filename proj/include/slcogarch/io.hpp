#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slcogarch/cogarch.hpp"
#include "slcogarch/pc_analysis.hpp"
#include "slcogarch/semi_levy.hpp"

namespace slcogarch {

struct AnalysisConfig {
  int m_window = 240;
  double alpha = 0.05;
  int max_lag = 104;
  int stride = 0;
};

// One experiment: driver law, volatility parameters, run length, sampling
// grid, seed, and analysis defaults.  Loaded from a key = value text file;
// the hash of the file bytes is stamped into every output for provenance.
struct ExperimentConfig {
  SemiLevyConfig driver;
  CogarchParams cogarch;
  long periods = 1;
  double sample_interval = 0.0;
  std::uint64_t seed = 1;
  AnalysisConfig analysis;
  std::string config_hash;

  void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& text);

// Ordered price observations; timestamps strictly increasing, prices
// positive.
struct PriceSeries {
  std::vector<double> timestamps;
  std::vector<double> prices;
};

// CSV with either one column (prices; implied unit-step timestamps) or two
// or more columns (first column timestamps, last column prices).
PriceSeries load_price_series(const std::string& path);

// ln(p_{k+1} / p_k); a non-positive price raises a data error naming the
// offending row.
std::vector<double> log_returns(const PriceSeries& series);

// Column selection plus the transform chain applied by the analysis
// commands, in order: log-returns, first differences, squaring, last-K
// restriction.
struct SeriesTransform {
  std::string column;  // header name; empty = last column
  bool log_return = false;
  bool diff = false;
  bool square = false;
  long tail = 0;  // 0 = keep everything
};

std::vector<double> load_series_csv(const std::string& path,
                                    const SeriesTransform& transform);

// Shortest representation that round-trips to the identical double.
std::string format_double(double v);

std::string fnv1a_hex(const std::string& bytes);

// Orchestration entry points behind the CLI subcommands.  All return a
// process exit status.
int run_simulate(const ExperimentConfig& config, const std::string& out_dir,
                 bool require_valid);
int run_check(const ExperimentConfig& config, const std::string& kv_out_path);
int run_coherence(const std::string& input_csv,
                  const SeriesTransform& transform,
                  const CoherenceOptions& options, const std::string& out_dir,
                  const std::string& config_hash = {});
int run_acf(const std::string& input_csv, const SeriesTransform& transform,
            int max_lag, const std::string& out_path);
int run_charfn(const ExperimentConfig& config, double t, double u_min,
               double u_max, double u_step, const std::string& out_path);

}  // namespace slcogarch
