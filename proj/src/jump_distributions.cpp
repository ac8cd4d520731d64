#include "slcogarch/jump_distributions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace slcogarch {

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite: tridiagonal eigensolver failed");

  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = sqrt_pi * v0 * v0;
  }
  return rule;
}

NormalJumps::NormalJumps(double mu, double sigma2) : mu_(mu), sigma2_(sigma2) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("NormalJumps: variance must be non-negative");
  sigma_ = std::sqrt(sigma2);
}

std::complex<double> NormalJumps::char_function(double u) const {
  // E exp(iuZ) = exp(iu mu - u^2 sigma^2 / 2)
  return std::exp(std::complex<double>(-0.5 * u * u * sigma2_, u * mu_));
}

QuadratureRule NormalJumps::quadrature(int n) const {
  QuadratureRule raw = gauss_hermite(n);
  QuadratureRule rule;
  rule.nodes = (mu_ + std::sqrt(2.0) * sigma_ * raw.nodes.array()).matrix();
  rule.weights = raw.weights / std::sqrt(M_PI);
  return rule;
}

std::string NormalJumps::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "normal(%.17g,%.17g)", mu_, sigma2_);
  return buf;
}

std::complex<double> PointMassJumps::char_function(double u) const {
  return std::exp(std::complex<double>(0.0, u * value_));
}

QuadratureRule PointMassJumps::quadrature(int) const {
  QuadratureRule rule;
  rule.nodes = Eigen::VectorXd::Constant(1, value_);
  rule.weights = Eigen::VectorXd::Ones(1);
  return rule;
}

std::string PointMassJumps::describe() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "point(%.17g)", value_);
  return buf;
}

std::shared_ptr<const JumpDistribution> parse_jump_distribution(
    const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("bad jump distribution spec: " + text);
  const std::string name = text.substr(0, open);
  const std::string args = text.substr(open + 1, close - open - 1);

  auto split_args = [&](std::size_t expected) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < args.size()) {
      std::size_t comma = args.find(',', pos);
      if (comma == std::string::npos) comma = args.size();
      out.push_back(std::stod(args.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    if (out.size() != expected)
      throw std::invalid_argument("bad argument count in: " + text);
    return out;
  };

  if (name == "normal") {
    const auto a = split_args(2);
    return std::make_shared<NormalJumps>(a[0], a[1]);
  }
  if (name == "point") {
    const auto a = split_args(1);
    return std::make_shared<PointMassJumps>(a[0]);
  }
  throw std::invalid_argument("unknown jump distribution family: " + name);
}

}  // namespace slcogarch
