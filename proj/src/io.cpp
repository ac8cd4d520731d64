#include "slcogarch/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "slcogarch/conditions.hpp"

namespace slcogarch {

namespace {

[[noreturn]] void data_error(const std::string& what, std::size_t line) {
  throw std::runtime_error(what + " (line " + std::to_string(line) + ")");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits on commas and whitespace outside parentheses, so distribution
// specs like normal(2,4) survive as single tokens.
std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ',' || c == ' ' || c == '\t')) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

Eigen::VectorXd to_vector(const std::vector<std::string>& tokens) {
  Eigen::VectorXd v(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) v[i] = to_double(tokens[i]);
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  driver.validate();
  cogarch.validate();
  if (periods < 1)
    throw std::invalid_argument("config: periods must be positive");
  if (!(sample_interval > 0.0))
    throw std::invalid_argument("config: sample_interval must be positive");
  const double rho = driver.period_tau / sample_interval;
  if (std::abs(rho - std::lround(rho)) > 1e-9 * std::max(1.0, rho))
    throw std::invalid_argument(
        "config: sample_interval must divide the period");
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  std::map<std::string, std::vector<std::string>> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) data_error("expected key = value", line_no);
    std::string key = trim(line.substr(0, eq));
    // Accept both "lengths" and "lengths[]" spellings.
    if (key.size() > 2 && key.substr(key.size() - 2) == "[]")
      key = key.substr(0, key.size() - 2);
    kv[key] = split_values(trim(line.substr(eq + 1)));
  }

  auto require = [&](const std::string& key) -> const std::vector<std::string>& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
  };
  auto scalar = [&](const std::string& key) {
    const auto& v = require(key);
    if (v.size() != 1)
      throw std::runtime_error("config: key '" + key + "' needs one value");
    return v[0];
  };
  auto optional_scalar = [&](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second.size() != 1)
      throw std::runtime_error("config: key '" + key + "' needs one value");
    return to_double(it->second[0]);
  };

  ExperimentConfig cfg;
  cfg.driver.period_tau = to_double(scalar("tau"));
  for (const auto& t : require("lengths"))
    cfg.driver.lengths.push_back(to_double(t));
  for (const auto& t : require("rates"))
    cfg.driver.rates.push_back(to_double(t));
  for (const auto& t : require("jump_dist"))
    cfg.driver.jump_dists.push_back(parse_jump_distribution(t));
  cfg.driver.drift_delta = optional_scalar("delta", 0.0);
  if (kv.count("d") &&
      std::lround(to_double(scalar("d"))) != cfg.driver.partition_count())
    throw std::runtime_error("config: 'd' disagrees with lengths[]");

  cfg.cogarch.p = static_cast<int>(std::lround(to_double(scalar("p"))));
  cfg.cogarch.q = static_cast<int>(std::lround(to_double(scalar("q"))));
  cfg.cogarch.alpha0 = to_double(scalar("alpha0"));
  const Eigen::VectorXd alpha = to_vector(require("alpha"));
  if (alpha.size() > cfg.cogarch.q)
    throw std::runtime_error("config: more alpha entries than q");
  cfg.cogarch.a = Eigen::VectorXd::Zero(cfg.cogarch.q);
  cfg.cogarch.a.head(alpha.size()) = alpha;
  cfg.cogarch.betas = to_vector(require("beta"));
  cfg.cogarch.y0 = to_vector(require("y0"));

  cfg.periods = std::lround(to_double(scalar("periods")));
  cfg.sample_interval = to_double(scalar("sample_interval"));
  cfg.seed = static_cast<std::uint64_t>(std::stoull(scalar("seed")));

  cfg.analysis.m_window = static_cast<int>(optional_scalar("M", 240));
  cfg.analysis.alpha = optional_scalar("alpha_level", 0.05);
  cfg.analysis.max_lag = static_cast<int>(optional_scalar("max_lag", 104));
  cfg.analysis.stride = static_cast<int>(optional_scalar("stride", 0));

  cfg.config_hash = fnv1a_hex(text);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Csv {
  std::vector<std::string> header;  // empty when the file has none
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Csv csv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      cells.push_back(trim(line.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (line_no == 1) {
      bool numeric = true;
      for (const auto& c : cells) {
        try {
          to_double(c);
        } catch (...) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        csv.header = cells;
        continue;
      }
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        row.push_back(to_double(c));
      } catch (...) {
        data_error("malformed CSV value '" + c + "'", line_no);
      }
    }
    if (!csv.rows.empty() && row.size() != csv.rows.front().size())
      data_error("ragged CSV row", line_no);
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::size_t column_index(const Csv& csv, const std::string& name) {
  if (csv.rows.empty()) throw std::runtime_error("CSV has no data rows");
  const std::size_t width = csv.rows.front().size();
  if (name.empty()) return width - 1;
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return i;
  throw std::runtime_error("CSV has no column named '" + name + "'");
}

}  // namespace

PriceSeries load_price_series(const std::string& path) {
  const Csv csv = read_csv(path);
  if (csv.rows.empty()) throw std::runtime_error("empty price series");
  PriceSeries series;
  const std::size_t width = csv.rows.front().size();
  const std::size_t price_col = width - 1;
  series.timestamps.reserve(csv.rows.size());
  series.prices.reserve(csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double t = width >= 2 ? csv.rows[i][0] : static_cast<double>(i);
    const double p = csv.rows[i][price_col];
    if (!series.timestamps.empty() && t <= series.timestamps.back())
      data_error("timestamps must be strictly increasing", i + 1);
    if (!(p > 0.0)) data_error("prices must be positive", i + 1);
    series.timestamps.push_back(t);
    series.prices.push_back(p);
  }
  return series;
}

std::vector<double> log_returns(const PriceSeries& series) {
  if (series.prices.size() < 2)
    throw std::invalid_argument("log_returns: need at least two prices");
  std::vector<double> out;
  out.reserve(series.prices.size() - 1);
  for (std::size_t k = 0; k + 1 < series.prices.size(); ++k) {
    if (!(series.prices[k] > 0.0) || !(series.prices[k + 1] > 0.0))
      data_error("log_returns: non-positive price", k + 1);
    out.push_back(std::log(series.prices[k + 1] / series.prices[k]));
  }
  return out;
}

std::vector<double> load_series_csv(const std::string& path,
                                    const SeriesTransform& transform) {
  std::vector<double> series;
  if (transform.log_return) {
    series = log_returns(load_price_series(path));
  } else {
    const Csv csv = read_csv(path);
    const std::size_t col = column_index(csv, transform.column);
    series.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
      if (col >= row.size()) throw std::runtime_error("short CSV row");
      series.push_back(row[col]);
    }
  }
  if (transform.diff) {
    if (series.size() < 2)
      throw std::runtime_error("cannot difference fewer than two samples");
    std::vector<double> d;
    d.reserve(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
      d.push_back(series[i + 1] - series[i]);
    series = std::move(d);
  }
  if (transform.square)
    for (auto& v : series) v *= v;
  if (transform.tail > 0 &&
      static_cast<std::size_t>(transform.tail) < series.size())
    series.erase(series.begin(),
                 series.end() - static_cast<std::ptrdiff_t>(transform.tail));
  return series;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

int run_simulate(const ExperimentConfig& config, const std::string& out_dir,
                 bool require_valid) {
  config.validate();
  if (require_valid) {
    const ConditionReport report = check_all(config.driver, config.cogarch);
    if (!report.overall) {
      std::cerr << "refusing to simulate: parameter conditions not met\n"
                << format_report(report);
      return 2;
    }
  }

  Rng rng(config.seed);
  const JumpPath driver = simulate_driver(config.driver, config.periods, rng);
  const CogarchEngine engine(config.cogarch);
  const CogarchPath path = engine.simulate_path(driver, config.sample_interval);

  const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "jumps.csv");
    out << "n,arrival,jump\n";
    for (std::size_t n = 0; n < driver.arrivals.size(); ++n)
      out << (n + 1) << ',' << format_double(driver.arrivals[n]) << ','
          << format_double(driver.jumps[n]) << '\n';
  }
  {
    auto out = open_out(dir / "jump_records.csv");
    out << "n,arrival,V_jump,G_jump\n";
    for (std::size_t n = 0; n < path.jump_times.size(); ++n)
      out << (n + 1) << ',' << format_double(path.jump_times[n]) << ','
          << format_double(path.jump_volatility[n]) << ','
          << format_double(path.jump_price[n]) << '\n';
  }
  double min_grid_v = std::numeric_limits<double>::infinity();
  {
    // Row i = 0 is fully determined by the config (time 0, V = alpha0 +
    // a'y0, G = 0) and is omitted, so the file has exactly periods *
    // samples-per-period rows.
    auto out = open_out(dir / "grid.csv");
    out << "index,time,V,G\n";
    for (std::size_t i = 0; i < path.grid_times.size(); ++i) {
      min_grid_v = std::min(min_grid_v, path.grid_volatility[i]);
      if (i == 0) continue;
      out << i << ',' << format_double(path.grid_times[i]) << ','
          << format_double(path.grid_volatility[i]) << ','
          << format_double(path.grid_price[i]) << '\n';
    }
  }
  {
    auto out = open_out(dir / "increments.csv");
    out << "i,increment\n";
    const std::vector<double> inc = increments(path);
    for (std::size_t i = 0; i < inc.size(); ++i)
      out << i << ',' << format_double(inc[i]) << '\n';
  }
  double min_jump_v = std::numeric_limits<double>::infinity();
  for (double v : path.jump_volatility) min_jump_v = std::min(min_jump_v, v);
  {
    auto out = open_out(dir / "manifest.txt");
    out << "config_hash = " << config.config_hash << '\n'
        << "seed = " << config.seed << '\n'
        << "periods = " << config.periods << '\n'
        << "tau = " << format_double(config.driver.period_tau) << '\n'
        << "sample_interval = " << format_double(config.sample_interval)
        << '\n'
        << "samples_per_period = "
        << std::lround(config.driver.period_tau / config.sample_interval)
        << '\n'
        << "horizon = " << format_double(driver.horizon) << '\n'
        << "jump_count = " << driver.arrivals.size() << '\n'
        << "grid_count = " << (path.grid_times.size() - 1) << '\n'
        << "increment_count = " << (path.grid_times.size() - 1) << '\n'
        << "min_grid_volatility = " << format_double(min_grid_v) << '\n'
        << "min_jump_volatility = " << format_double(min_jump_v) << '\n';
  }
  std::cout << "simulated " << driver.arrivals.size() << " jumps, "
            << (path.grid_times.size() - 1) << " grid samples -> "
            << dir.string() << '\n';
  return 0;
}

int run_check(const ExperimentConfig& config, const std::string& kv_out_path) {
  config.validate();
  const ConditionReport report = check_all(config.driver, config.cogarch);
  std::cout << format_report(report);
  if (!kv_out_path.empty()) {
    auto out = open_out(kv_out_path);
    out << "config_hash = " << config.config_hash << '\n'
        << report_key_values(report);
  }
  return report.overall ? 0 : 1;
}

int run_coherence(const std::string& input_csv,
                  const SeriesTransform& transform,
                  const CoherenceOptions& options, const std::string& out_dir,
                  const std::string& config_hash) {
  const std::vector<double> series = load_series_csv(input_csv, transform);
  CoherenceReport report = significant_pairs(series, options);
  estimate_period(report);

  const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "coherence.csv");
    out << "P,Q,value,significant\n";
    if (options.keep_all_values) {
      for (const auto& pt : report.values)
        out << pt.p << ',' << pt.q << ',' << format_double(pt.value) << ','
            << (pt.value > report.threshold ? 1 : 0) << '\n';
    } else {
      for (const auto& pt : report.significant)
        out << pt.p << ',' << pt.q << ',' << format_double(pt.value)
            << ",1\n";
    }
  }
  {
    auto out = open_out(dir / "coherence_summary.txt");
    if (!config_hash.empty()) out << "config_hash = " << config_hash << '\n';
    out << "n = " << report.n << '\n'
        << "M = " << report.m_window << '\n'
        << "alpha = " << format_double(report.alpha) << '\n'
        << "threshold = " << format_double(report.threshold) << '\n'
        << "stride = " << report.stride_used << '\n'
        << "evaluated_pairs = " << report.evaluated_pairs << '\n'
        << "offdiag_pairs = " << report.offdiag_pairs << '\n'
        << "offdiag_significant = " << report.offdiag_significant << '\n'
        << "period = "
        << (report.estimated_period ? std::to_string(*report.estimated_period)
                                    : std::string("none"))
        << '\n'
        << "classification = " << to_string(report.classification) << '\n';
  }
  std::cout << "coherence: n = " << report.n << ", threshold = "
            << format_double(report.threshold) << ", significant = "
            << report.significant.size() << ", classification = "
            << to_string(report.classification);
  if (report.estimated_period)
    std::cout << ", period = " << *report.estimated_period;
  std::cout << '\n';
  return 0;
}

int run_acf(const std::string& input_csv, const SeriesTransform& transform,
            int max_lag, const std::string& out_path) {
  const std::vector<double> series = load_series_csv(input_csv, transform);
  const std::vector<double> acf = sample_acf(series, max_lag);
  auto out = open_out(out_path);
  out << "lag,acf\n";
  for (std::size_t k = 0; k < acf.size(); ++k)
    out << k << ',' << format_double(acf[k]) << '\n';
  std::cout << "acf: n = " << series.size() << ", max_lag = " << max_lag
            << ", band = " << format_double(1.96 / std::sqrt(series.size()))
            << " -> " << out_path << '\n';
  return 0;
}

int run_charfn(const ExperimentConfig& config, double t, double u_min,
               double u_max, double u_step, const std::string& out_path) {
  config.driver.validate();
  if (!(u_step > 0.0))
    throw std::invalid_argument("charfn: u_step must be positive");
  auto out = open_out(out_path);
  out << "u,re,im\n";
  for (double u = u_min; u <= u_max + 1e-12 * u_step; u += u_step) {
    const std::complex<double> value = char_function(u, t, config.driver);
    out << format_double(u) << ',' << format_double(value.real()) << ','
        << format_double(value.imag()) << '\n';
  }
  std::cout << "charfn: t = " << format_double(t) << " -> " << out_path
            << '\n';
  return 0;
}

}  // namespace slcogarch
