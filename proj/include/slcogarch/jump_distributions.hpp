#pragma once

#include <complex>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "slcogarch/rng.hpp"

namespace slcogarch {

// Quadrature against a probability law: integral of g dF ~= sum w_i g(z_i),
// with the weights summing to one.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Hermite rule for integral exp(-x^2) f(x) dx (physicists' weight),
// computed by Golub-Welsch on the Jacobi matrix.  Raw weights sum to
// sqrt(pi).
QuadratureRule gauss_hermite(int n);

// Law of the jump marks attached to one partition element of the driving
// process.  The interface carries what downstream consumers need: sampling,
// the first two moments, the characteristic function, and a quadrature rule
// for expectations of non-polynomial integrands.
class JumpDistribution {
 public:
  virtual ~JumpDistribution() = default;

  virtual double sample(Rng& rng) const = 0;
  virtual double mean() const = 0;
  virtual double second_moment() const = 0;
  virtual std::complex<double> char_function(double u) const = 0;
  virtual QuadratureRule quadrature(int n) const = 0;
  virtual std::string describe() const = 0;
};

class NormalJumps final : public JumpDistribution {
 public:
  NormalJumps(double mu, double sigma2);

  double sample(Rng& rng) const override { return rng.normal(mu_, sigma_); }
  double mean() const override { return mu_; }
  double second_moment() const override { return mu_ * mu_ + sigma2_; }
  std::complex<double> char_function(double u) const override;
  QuadratureRule quadrature(int n) const override;
  std::string describe() const override;

  double variance() const { return sigma2_; }

 private:
  double mu_;
  double sigma2_;
  double sigma_;
};

// Degenerate law concentrated at a single point.
class PointMassJumps final : public JumpDistribution {
 public:
  explicit PointMassJumps(double value) : value_(value) {}

  double sample(Rng&) const override { return value_; }
  double mean() const override { return value_; }
  double second_moment() const override { return value_ * value_; }
  std::complex<double> char_function(double u) const override;
  QuadratureRule quadrature(int n) const override;
  std::string describe() const override;

 private:
  double value_;
};

// Parses "normal(mu,sigma2)" or "point(c)".  Throws std::invalid_argument on
// anything else.
std::shared_ptr<const JumpDistribution> parse_jump_distribution(
    const std::string& text);

}  // namespace slcogarch
