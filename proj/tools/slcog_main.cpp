// Command-line front end: simulate paths, check parameter conditions, and
// run the coherence / ACF analyses on exported series.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slcogarch/io.hpp"

namespace {

struct CommonConfigOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

slcogarch::ExperimentConfig load(const CommonConfigOpts& opts) {
  auto cfg = slcogarch::load_experiment_config(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-Levy driven COGARCH simulation and PC analysis"};
  app.require_subcommand(1);

  CommonConfigOpts cfg_opts;
  std::string out_dir = ".";
  std::string out_file;

  // simulate
  auto* sim = app.add_subcommand("simulate",
                                 "simulate a driver + volatility/price path");
  sim->add_option("--config", cfg_opts.config_path, "experiment config file")
      ->required();
  auto* seed_opt = sim->add_option("--seed", cfg_opts.seed,
                                   "override the config seed");
  sim->add_option("--out", out_dir, "output directory");
  bool require_valid = false;
  sim->add_flag("--require-valid", require_valid,
                "refuse to simulate unless all parameter conditions pass");

  // check
  auto* chk = app.add_subcommand("check", "run the parameter condition checks");
  chk->add_option("--config", cfg_opts.config_path, "experiment config file")
      ->required();
  chk->add_option("--out", out_file, "write a key=value report here");

  // coherence
  auto* coh = app.add_subcommand(
      "coherence", "sample spectral coherence of a series, with the "
                   "alpha-threshold and period estimate");
  std::string input;
  slcogarch::SeriesTransform transform;
  slcogarch::CoherenceOptions coh_opts;
  coh->add_option("--input", input, "series CSV")->required();
  coh->add_option("--column", transform.column,
                  "column to analyse (default: last)");
  coh->add_flag("--log-returns", transform.log_return,
                "treat the input as prices and analyse their log returns");
  coh->add_flag("--diff", transform.diff, "first-difference the series");
  coh->add_flag("--square", transform.square, "square the series");
  coh->add_option("--tail", transform.tail, "analyse only the last K samples");
  coh->add_option("--M", coh_opts.m_window, "smoothing window")->required();
  coh->add_option("--alpha", coh_opts.alpha, "significance level");
  coh->add_option("--stride", coh_opts.stride,
                  "grid stride (0 = automatic)");
  bool no_center = false;
  coh->add_flag("--no-center", no_center, "skip mean-centering");
  coh->add_flag("--emit-all", coh_opts.keep_all_values,
                "write every evaluated pair, not only exceedances");
  coh->add_option("--out", out_dir, "output directory");

  // acf
  auto* acf = app.add_subcommand("acf", "sample autocorrelation of a series");
  int max_lag = 104;
  acf->add_option("--input", input, "series CSV")->required();
  acf->add_option("--column", transform.column,
                  "column to analyse (default: last)");
  acf->add_flag("--log-returns", transform.log_return,
                "treat the input as prices and analyse their log returns");
  acf->add_flag("--diff", transform.diff, "first-difference the series");
  acf->add_flag("--square", transform.square, "square the series");
  acf->add_option("--tail", transform.tail, "analyse only the last K samples");
  acf->add_option("--max-lag", max_lag, "largest lag");
  acf->add_option("--out", out_file, "output CSV")->required();

  // charfn
  auto* chf = app.add_subcommand(
      "charfn", "driver characteristic function on a u-grid");
  double t = 1.0, u_min = -2.0, u_max = 2.0, u_step = 0.5;
  chf->add_option("--config", cfg_opts.config_path, "experiment config file")
      ->required();
  chf->add_option("--t", t, "evaluation time")->required();
  chf->add_option("--u-min", u_min, "grid start");
  chf->add_option("--u-max", u_max, "grid end");
  chf->add_option("--u-step", u_step, "grid step");
  chf->add_option("--out", out_file, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);
  cfg_opts.seed_set = seed_opt->count() > 0;

  try {
    if (sim->parsed())
      return slcogarch::run_simulate(load(cfg_opts), out_dir, require_valid);
    if (chk->parsed()) return slcogarch::run_check(load(cfg_opts), out_file);
    if (coh->parsed()) {
      coh_opts.center = !no_center;
      return slcogarch::run_coherence(input, transform, coh_opts, out_dir);
    }
    if (acf->parsed())
      return slcogarch::run_acf(input, transform, max_lag, out_file);
    if (chf->parsed())
      return slcogarch::run_charfn(load(cfg_opts), t, u_min, u_max, u_step,
                                   out_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
