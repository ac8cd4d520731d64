#include "slcogarch/conditions.hpp"

#include <cmath>
#include <sstream>

namespace slcogarch {

EigenConditionResult check_eigen(const CogarchParams& params) {
  params.validate();
  EigenConditionResult result;
  Eigen::VectorXcd roots;
  try {
    roots = companion_roots(params.betas);
  } catch (const std::exception& e) {
    result.message = e.what();
    return result;
  }

  const int q = params.q;
  double max_abs = 0.0;
  for (int i = 0; i < q; ++i) max_abs = std::max(max_abs, std::abs(roots[i]));
  result.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      result.min_gap = std::min(result.min_gap, std::abs(roots[i] - roots[j]));
  if (q == 1) result.min_gap = std::numeric_limits<double>::infinity();
  result.distinct = result.min_gap >= 1e-8 * max_abs;

  result.eta_max = roots[0].real();
  for (int i = 1; i < q; ++i)
    result.eta_max = std::max(result.eta_max, roots[i].real());
  result.stable = result.eta_max < 0.0;

  if (result.distinct) {
    result.condition_estimate =
        eigen_structure(params.betas).condition_estimate;
  }
  result.ok = result.distinct && result.stable;
  if (!result.distinct)
    result.message = "eigenvalues are not distinct";
  else if (!result.stable)
    result.message = "an eigenvalue has non-negative real part";
  return result;
}

namespace {

// E log(1 + c Z^2) under the given law, by its quadrature rule.
double log_moment_integral(const JumpDistribution& dist, double c, int nodes) {
  const QuadratureRule rule = dist.quadrature(nodes);
  double value = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i];
    value += rule.weights[i] * std::log1p(c * z * z);
  }
  return value;
}

}  // namespace

LogMomentResult check_log_moment(const SemiLevyConfig& cfg,
                                 const CogarchParams& params, int r) {
  cfg.validate();
  const EigenStructure eig = eigen_structure(params.betas);
  const int q = params.q;

  LogMomentResult result;
  result.r = r;

  // P^{-1} (e a') P is rank one: (P^{-1} e) (a' P).
  Eigen::MatrixXcd ea = Eigen::MatrixXcd::Zero(q, q);
  ea.row(q - 1) = params.a.transpose().cast<std::complex<double>>();
  result.constant = natural_norm(ea, eig, r);

  const double lambda_tau = cfg.period_mass();
  if (!(lambda_tau > 0.0))
    throw std::invalid_argument(
        "check_log_moment: driver has zero jump intensity");
  result.rhs = -eig.eta_max * cfg.period_tau / lambda_tau;

  const int d = cfg.partition_count();
  result.integrals.resize(d);
  double weighted_sum = 0.0;   // sum_j lambda_j l_j I_j
  double weighted_err = 0.0;   // quadrature disagreement, same weighting
  double max_integral = 0.0;
  for (int j = 0; j < d; ++j) {
    const double i96 =
        log_moment_integral(*cfg.jump_dists[j], result.constant, 96);
    const double i128 =
        log_moment_integral(*cfg.jump_dists[j], result.constant, 128);
    const double err = std::abs(i128 - i96);
    if (err > 1e-8 * std::max(1.0, std::abs(i128)))
      result.quadrature_warning = true;
    result.integrals[j] = i128;
    max_integral = std::max(max_integral, i128);
    weighted_sum += cfg.rates[j] * cfg.lengths[j] * i128;
    weighted_err += cfg.rates[j] * cfg.lengths[j] * err;
  }

  result.uniform_margin = result.rhs - max_integral;
  result.lyapunov_margin =
      -eig.eta_max * cfg.period_tau - weighted_sum;
  // A quadrature disagreement only matters if it could flip the verdict.
  if (result.quadrature_warning &&
      std::abs(result.lyapunov_margin) < 10.0 * weighted_err)
    throw std::runtime_error(
        "check_log_moment: quadrature did not converge and the margin is "
        "too small to call");
  result.ok = result.lyapunov_margin > 0.0;
  return result;
}

NonnegResult check_nonneg(const SemiLevyConfig& cfg,
                          const CogarchParams& params,
                          const NonnegOptions& opts) {
  params.validate();
  NonnegResult result;

  EigenStructure eig;
  try {
    eig = eigen_structure(params.betas);
  } catch (const std::exception& e) {
    result.message = e.what();
    return result;
  }
  if (eig.eta_max >= 0.0) {
    result.message =
        "eigenvalues must have negative real parts to bound the tail";
    return result;
  }

  const int q = params.q;
  // f(t) = a' exp(Bt) e and g(t) = a' exp(Bt) y0 evaluated through the
  // diagonalisation: f(t) = Re sum_i (a'P)_i (P^{-1}x)_i exp(eta_i t).
  const Eigen::RowVectorXcd ap =
      params.a.transpose().cast<std::complex<double>>() * eig.vandermonde;
  Eigen::VectorXcd e_basis = Eigen::VectorXcd::Zero(q);
  e_basis[q - 1] = 1.0;
  const Eigen::VectorXcd ue = eig.vandermonde_inv * e_basis;
  const Eigen::VectorXcd uy =
      eig.vandermonde_inv * params.y0.cast<std::complex<double>>();

  auto bilinear = [&](const Eigen::VectorXcd& u, double t) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < q; ++i)
      acc += ap[i] * u[i] * std::exp(eig.eigenvalues[i] * t);
    return acc.real();
  };

  // Decay bound |a' exp(Bt) x| <= ||a|| kappa(P) ||x|| exp(eta t): choose the
  // horizon so the bound is below 1e-12 for both x = e and x = y0.
  double horizon = opts.horizon;
  if (horizon <= 0.0) {
    const double kappa = eig.condition_estimate;
    const double amp = params.a.norm() * std::max(1.0, kappa) *
                       std::max(1.0, std::max(params.y0.norm(), 1.0));
    horizon = std::log(std::max(amp, 1.0) / 1e-12) / (-eig.eta_max);
    horizon = std::max(horizon, 2.0 * cfg.period_tau);
  }
  double step = opts.grid_step;
  if (step <= 0.0) step = cfg.period_tau / 1000.0;
  // Nearly critical eigenvalues blow the decay horizon up; cap the grid at
  // five million points by widening the step rather than stalling.
  if (horizon / step > 5e6) step = horizon / 5e6;

  result.t_check = horizon;
  result.grid_step = step;

  double f_min = std::numeric_limits<double>::infinity();
  double g_min = std::numeric_limits<double>::infinity();
  const long n_steps = static_cast<long>(std::ceil(horizon / step));
  for (long i = 0; i <= n_steps; ++i) {
    const double t = std::min(static_cast<double>(i) * step, horizon);
    f_min = std::min(f_min, bilinear(ue, t));
    g_min = std::min(g_min, bilinear(uy, t));
  }

  result.f_min = f_min;
  // Floating-point dust at zero crossings is treated as non-negative.
  result.f_nonneg = f_min >= -1e-12;
  result.gamma = std::min(g_min, 0.0);
  result.floor = params.alpha0 + result.gamma;
  const bool gamma_ok = result.gamma >= -params.alpha0;
  result.ok = result.f_nonneg && gamma_ok;
  if (!result.f_nonneg)
    result.message = "a' exp(Bt) e dips negative";
  else if (!gamma_ok)
    result.message = "a' exp(Bt) y0 falls below -alpha0";
  return result;
}

ConditionReport check_all(const SemiLevyConfig& cfg,
                          const CogarchParams& params) {
  ConditionReport report;
  report.eigen = check_eigen(params);
  if (report.eigen.ok) {
    for (int r : {1, 2, kNormInf}) {
      report.log_moment.push_back(check_log_moment(cfg, params, r));
      if (report.log_moment.back().ok && report.log_moment_best_r == 0) {
        report.log_moment_ok = true;
        report.log_moment_best_r = r;
      }
    }
    report.nonneg = check_nonneg(cfg, params);
  }
  report.overall =
      report.eigen.ok && report.log_moment_ok && report.nonneg.ok;
  return report;
}

namespace {
const char* r_label(int r) {
  switch (r) {
    case 1:
      return "r1";
    case 2:
      return "r2";
    default:
      return "rinf";
  }
}
}  // namespace

std::string format_report(const ConditionReport& report) {
  std::ostringstream out;
  out.precision(12);
  out << "eigenvalue condition: " << (report.eigen.ok ? "pass" : "FAIL")
      << " (eta_max = " << report.eigen.eta_max
      << ", distinct = " << (report.eigen.distinct ? "yes" : "no");
  if (report.eigen.condition_estimate > 1e12)
    out << ", WARNING: eigenvector basis condition estimate "
        << report.eigen.condition_estimate;
  if (!report.eigen.message.empty()) out << ", " << report.eigen.message;
  out << ")\n";

  for (const auto& lm : report.log_moment) {
    out << "log-moment condition [" << r_label(lm.r)
        << "]: " << (lm.ok ? "pass" : "FAIL")
        << " (constant = " << lm.constant
        << ", lyapunov margin = " << lm.lyapunov_margin
        << ", uniform margin = " << lm.uniform_margin;
    if (lm.quadrature_warning) out << ", quadrature warning";
    out << ")\n";
  }
  out << "log-moment condition: "
      << (report.log_moment_ok ? "pass" : "FAIL");
  if (report.log_moment_ok)
    out << " (via " << r_label(report.log_moment_best_r) << ")";
  out << "\n";

  out << "non-negativity condition: " << (report.nonneg.ok ? "pass" : "FAIL")
      << " (gamma = " << report.nonneg.gamma
      << ", volatility floor = " << report.nonneg.floor
      << ", min a'exp(Bt)e = " << report.nonneg.f_min;
  if (!report.nonneg.message.empty()) out << ", " << report.nonneg.message;
  out << ")\n";

  out << "overall: " << (report.overall ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string report_key_values(const ConditionReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "eigen_ok = " << (report.eigen.ok ? 1 : 0) << "\n";
  out << "eta_max = " << report.eigen.eta_max << "\n";
  for (const auto& lm : report.log_moment)
    out << "log_moment_margin_" << r_label(lm.r) << " = "
        << lm.lyapunov_margin << "\n";
  for (const auto& lm : report.log_moment)
    out << "log_moment_uniform_margin_" << r_label(lm.r) << " = "
        << lm.uniform_margin << "\n";
  out << "log_moment_ok = " << (report.log_moment_ok ? 1 : 0) << "\n";
  out << "gamma = " << report.nonneg.gamma << "\n";
  out << "floor = " << report.nonneg.floor << "\n";
  out << "nonneg_ok = " << (report.nonneg.ok ? 1 : 0) << "\n";
  out << "overall = " << (report.overall ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace slcogarch
