#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "slcogarch/matrix_core.hpp"
#include "slcogarch/semi_levy.hpp"

namespace slcogarch {

// Raised when a simulated volatility goes negative, i.e. the parameters
// violate the non-negativity conditions.  Run the condition checker before
// simulating to certify a parameterisation.
struct ModelViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of the volatility state-space recursion of order (p, q):
// companion matrix from beta_1..beta_q, load vector a = (alpha_1..alpha_q)'
// with alpha_{p+1}..alpha_q = 0, level alpha_0 > 0, and a deterministic
// initial state y0.
struct CogarchParams {
  int p = 1;
  int q = 1;
  double alpha0 = 0.0;
  Eigen::VectorXd a;
  Eigen::VectorXd betas;
  Eigen::VectorXd y0;

  // Throws std::invalid_argument unless q >= p >= 1, alpha0 > 0,
  // alpha_p != 0, trailing entries of a zero, beta_q != 0, and the vector
  // sizes all equal q.
  void validate() const;
};

// One simulated path: per-jump records plus the equally spaced samples.
// Grid samples sit at times i * sample_interval for i = 0 .. m*rho (both
// endpoints) where rho = tau / sample_interval; the volatility samples are
// left limits and the price samples carry any jump landing exactly on a
// grid point.
struct CogarchPath {
  std::vector<double> jump_times;
  std::vector<Eigen::VectorXd> jump_states;  // state right after each jump
  std::vector<double> jump_volatility;       // left-limit V at each jump
  std::vector<double> jump_price;            // G right after each jump

  std::vector<double> grid_times;
  std::vector<double> grid_volatility;
  std::vector<double> grid_price;
  double sample_interval = 0.0;
  double horizon = 0.0;

  Eigen::VectorXd initial_state;
};

// Affine map Y_t = J * Y_s + K accumulated from the jumps in (s, t] and the
// matrix-exponential drift between them.
struct RecurrencePair {
  Eigen::MatrixXd j;
  Eigen::VectorXd k;
  double s = 0.0;
  double t = 0.0;
};

// Evolution of the state, volatility and price processes for one parameter
// set.  The companion eigen-decomposition is computed once and reused for
// every inter-jump exponential.
class CogarchEngine {
 public:
  explicit CogarchEngine(CogarchParams params);

  const CogarchParams& params() const { return params_; }
  const EigenStructure& eigen() const { return eig_; }

  // State across one inter-arrival interval of length dt followed by a jump
  // of size z:  y -> exp(B dt) y + e (alpha0 + a' exp(B dt) y) z^2.
  Eigen::VectorXd state_update(const Eigen::VectorXd& y_prev, double dt,
                               double z) const;

  // Left-limit volatility after drifting dt from the previous post-jump
  // state: alpha0 + a' exp(B dt) y_prev.
  double volatility_at_jump(const Eigen::VectorXd& y_prev, double dt) const;

  // Walks the driver jump by jump (volatility first, then the price update
  // G += sqrt(V) Z, then the state jump) and fills the sample grid.
  // sample_interval must divide the driver period; a negative volatility
  // raises ModelViolationError.
  CogarchPath simulate_path(const JumpPath& driver,
                            double sample_interval) const;

  // The (J, K) pair over (s, t] for the given driver realisation.
  RecurrencePair recurrence_pair(const JumpPath& driver, double s,
                                 double t) const;

  // Cadlag state at an arbitrary time of a simulated path.
  Eigen::VectorXd state_at(double t, const CogarchPath& path) const;

 private:
  CogarchParams params_;
  EigenStructure eig_;
};

// First differences of the sampled price process; length = samples - 1.
std::vector<double> increments(const CogarchPath& path);

}  // namespace slcogarch
