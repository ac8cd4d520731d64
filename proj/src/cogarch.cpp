#include "slcogarch/cogarch.hpp"

#include <algorithm>
#include <cmath>

namespace slcogarch {

void CogarchParams::validate() const {
  if (p < 1 || q < p)
    throw std::invalid_argument("params: need q >= p >= 1");
  if (!(alpha0 > 0.0))
    throw std::invalid_argument("params: alpha0 must be positive");
  if (a.size() != q || betas.size() != q || y0.size() != q)
    throw std::invalid_argument("params: a, beta and y0 must all have size q");
  if (a[p - 1] == 0.0)
    throw std::invalid_argument("params: alpha_p must be non-zero");
  for (int i = p; i < q; ++i)
    if (a[i] != 0.0)
      throw std::invalid_argument("params: alpha_{p+1}..alpha_q must be zero");
  if (betas[q - 1] == 0.0)
    throw std::invalid_argument("params: beta_q must be non-zero");
}

CogarchEngine::CogarchEngine(CogarchParams params)
    : params_(std::move(params)) {
  params_.validate();
  eig_ = eigen_structure(params_.betas);
}

Eigen::VectorXd CogarchEngine::state_update(const Eigen::VectorXd& y_prev,
                                            double dt, double z) const {
  Eigen::VectorXd y = mat_exp_apply(eig_, dt, y_prev);
  const double v = params_.alpha0 + params_.a.dot(y);
  y[params_.q - 1] += v * z * z;
  return y;
}

double CogarchEngine::volatility_at_jump(const Eigen::VectorXd& y_prev,
                                         double dt) const {
  return params_.alpha0 + params_.a.dot(mat_exp_apply(eig_, dt, y_prev));
}

CogarchPath CogarchEngine::simulate_path(const JumpPath& driver,
                                         double sample_interval) const {
  const double tau = driver.config.period_tau;
  if (driver.jumps.size() != driver.arrivals.size())
    throw std::invalid_argument("simulate_path: jump sizes not drawn yet");
  if (!(sample_interval > 0.0))
    throw std::invalid_argument("simulate_path: sample interval must be > 0");
  const double rho_real = tau / sample_interval;
  const long rho = std::lround(rho_real);
  if (rho < 1 || std::abs(rho_real - static_cast<double>(rho)) >
                     1e-9 * static_cast<double>(rho))
    throw std::invalid_argument(
        "simulate_path: sample interval must divide the period");
  const long periods = std::lround(driver.horizon / tau);
  // Grid points i = 0..m*rho inclusive, so the sampled price covers both
  // endpoints and its first differences span every sampling interval.
  const long n_grid = periods * rho + 1;

  CogarchPath path;
  path.sample_interval = sample_interval;
  path.initial_state = params_.y0;
  path.jump_times.reserve(driver.arrivals.size());
  path.jump_states.reserve(driver.arrivals.size());
  path.jump_volatility.reserve(driver.arrivals.size());
  path.jump_price.reserve(driver.arrivals.size());
  path.grid_times.reserve(n_grid);
  path.grid_volatility.reserve(n_grid);
  path.grid_price.reserve(n_grid);

  Eigen::VectorXd y = params_.y0;
  double t_cur = 0.0;
  double price = 0.0;
  double last_jump_time = -1.0;
  double last_jump_vol = 0.0;
  std::size_t nj = 0;

  auto process_jump = [&](std::size_t n) {
    const double arrival = driver.arrivals[n];
    const double z = driver.jumps[n];
    Eigen::VectorXd drifted = mat_exp_apply(eig_, arrival - t_cur, y);
    const double v = params_.alpha0 + params_.a.dot(drifted);
    if (v < 0.0)
      throw ModelViolationError(
          "simulate_path: negative volatility; the parameterisation violates "
          "the non-negativity conditions (run the condition checker)");
    price += std::sqrt(v) * z;
    drifted[params_.q - 1] += v * z * z;
    y = std::move(drifted);
    t_cur = arrival;
    last_jump_time = arrival;
    last_jump_vol = v;
    path.jump_times.push_back(arrival);
    path.jump_states.push_back(y);
    path.jump_volatility.push_back(v);
    path.jump_price.push_back(price);
  };

  for (long i = 0; i < n_grid; ++i) {
    const double g = static_cast<double>(i) * sample_interval;
    while (nj < driver.arrivals.size() && driver.arrivals[nj] <= g)
      process_jump(nj++);

    // Volatility is the left limit at g.  If a jump landed exactly on the
    // grid point, that is the jump's own pre-jump volatility; the price
    // sample includes the jump either way.
    double v;
    if (last_jump_time == g) {
      v = last_jump_vol;
    } else {
      v = params_.alpha0 + params_.a.dot(mat_exp_apply(eig_, g - t_cur, y));
      if (v < 0.0)
        throw ModelViolationError(
            "simulate_path: negative volatility; the parameterisation "
            "violates the non-negativity conditions (run the condition "
            "checker)");
    }
    path.grid_times.push_back(g);
    path.grid_volatility.push_back(v);
    path.grid_price.push_back(price);
  }

  // Jumps between the last grid point and the horizon.
  while (nj < driver.arrivals.size() && driver.arrivals[nj] <= driver.horizon)
    process_jump(nj++);

  path.horizon = driver.horizon;
  return path;
}

RecurrencePair CogarchEngine::recurrence_pair(const JumpPath& driver, double s,
                                              double t) const {
  if (s < 0.0 || t < s || t > driver.horizon)
    throw std::invalid_argument(
        "recurrence_pair: need 0 <= s <= t <= horizon");
  if (driver.jumps.size() != driver.arrivals.size())
    throw std::invalid_argument("recurrence_pair: jump sizes not drawn yet");
  const int q = params_.q;
  RecurrencePair pair;
  pair.s = s;
  pair.t = t;
  pair.j = Eigen::MatrixXd::Identity(q, q);
  pair.k = Eigen::VectorXd::Zero(q);

  const auto begin = std::upper_bound(driver.arrivals.begin(),
                                      driver.arrivals.end(), s);
  const auto end = std::upper_bound(driver.arrivals.begin(),
                                    driver.arrivals.end(), t);
  double cur = s;
  for (auto it = begin; it != end; ++it) {
    const std::size_t n = static_cast<std::size_t>(it - driver.arrivals.begin());
    const double z2 = driver.jumps[n] * driver.jumps[n];
    Eigen::MatrixXd drift = mat_exp(eig_, *it - cur);
    // (I + z^2 e a') exp(B dt): the rank-one factor only touches the last
    // row.
    drift.row(q - 1) += z2 * (params_.a.transpose() * drift);
    pair.j = drift * pair.j;
    pair.k = drift * pair.k;
    pair.k[q - 1] += params_.alpha0 * z2;
    cur = *it;
  }
  const Eigen::MatrixXd tail = mat_exp(eig_, t - cur);
  pair.j = tail * pair.j;
  pair.k = tail * pair.k;
  return pair;
}

Eigen::VectorXd CogarchEngine::state_at(double t,
                                        const CogarchPath& path) const {
  if (t < 0.0) throw std::domain_error("state_at: negative time");
  const auto it = std::upper_bound(path.jump_times.begin(),
                                   path.jump_times.end(), t);
  if (it == path.jump_times.begin())
    return mat_exp_apply(eig_, t, path.initial_state);
  const std::size_t n = static_cast<std::size_t>(it - path.jump_times.begin()) - 1;
  return mat_exp_apply(eig_, t - path.jump_times[n], path.jump_states[n]);
}

std::vector<double> increments(const CogarchPath& path) {
  std::vector<double> out;
  if (path.grid_price.size() < 2) return out;
  out.reserve(path.grid_price.size() - 1);
  for (std::size_t i = 0; i + 1 < path.grid_price.size(); ++i)
    out.push_back(path.grid_price[i + 1] - path.grid_price[i]);
  return out;
}

}  // namespace slcogarch
