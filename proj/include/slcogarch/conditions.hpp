#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slcogarch/cogarch.hpp"
#include "slcogarch/matrix_core.hpp"
#include "slcogarch/semi_levy.hpp"

namespace slcogarch {

// Eigenvalue condition: companion eigenvalues distinct with strictly
// negative real parts.
struct EigenConditionResult {
  bool distinct = false;
  bool stable = false;
  double eta_max = 0.0;
  double min_gap = 0.0;  // minimum pairwise eigenvalue distance
  double condition_estimate = 0.0;
  bool ok = false;
  std::string message;
};

// Log-moment condition for one norm order r.  With c = ||P^{-1}(ea')P||_r
// and I_j = E log(1 + c Z_j^2):
//   uniform_margin  = rhs - max_j I_j          (per-family uniform bound,
//                                               rhs = -eta tau / Lambda(tau))
//   lyapunov_margin = -eta tau - sum_j lambda_j l_j I_j
// The flag is driven by the Lyapunov margin: its positivity is exactly what
// makes the per-period expected log-contraction negative, which is the
// working requirement for the stationary recursion.  The uniform bound is
// reported as a diagnostic; it is strictly stronger and fails for natural
// parameter sets whose heavy jump families carry little rate mass.
struct LogMomentResult {
  int r = 2;
  double constant = 0.0;  // c above
  double rhs = 0.0;
  Eigen::VectorXd integrals;       // I_j per interval family
  double uniform_margin = 0.0;
  double lyapunov_margin = 0.0;
  bool quadrature_warning = false;  // 96- vs 128-node disagreement
  bool ok = false;
};

// Volatility non-negativity certificate: f(t) = a' exp(Bt) e >= 0 on a grid
// that, combined with the exponential decay bound, covers all t >= 0; and
// gamma = min(min_t a' exp(Bt) y0, 0) >= -alpha0.  The guaranteed floor is
// alpha0 + gamma.
struct NonnegResult {
  bool f_nonneg = false;
  double f_min = 0.0;
  double gamma = 0.0;
  double floor = 0.0;
  double t_check = 0.0;
  double grid_step = 0.0;
  bool ok = false;
  std::string message;
};

struct ConditionReport {
  EigenConditionResult eigen;
  std::vector<LogMomentResult> log_moment;  // r = 1, 2, inf
  bool log_moment_ok = false;
  int log_moment_best_r = 0;  // 0: none passed
  NonnegResult nonneg;
  bool overall = false;
};

EigenConditionResult check_eigen(const CogarchParams& params);

// Throws std::runtime_error only when the quadrature disagreement between 96
// and 128 nodes is large enough to make the verdict ambiguous; otherwise a
// disagreement beyond 1e-8 relative is recorded as a warning.
LogMomentResult check_log_moment(const SemiLevyConfig& cfg,
                                 const CogarchParams& params, int r);

struct NonnegOptions {
  double horizon = 0.0;    // 0: derive from the decay bound
  double grid_step = 0.0;  // 0: tau / 1000
};

NonnegResult check_nonneg(const SemiLevyConfig& cfg,
                          const CogarchParams& params,
                          const NonnegOptions& opts = {});

// Runs all three checks; the log-moment condition passes if any of
// r in {1, 2, inf} passes.
ConditionReport check_all(const SemiLevyConfig& cfg,
                          const CogarchParams& params);

std::string format_report(const ConditionReport& report);

// Machine-readable key=value lines: eigen_ok, eta_max,
// log_moment_margin_r1/r2/rinf, log_moment_ok, gamma, floor, nonneg_ok,
// overall.
std::string report_key_values(const ConditionReport& report);

}  // namespace slcogarch
