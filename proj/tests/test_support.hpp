#pragma once

#include <memory>

#include "slcogarch/cogarch.hpp"
#include "slcogarch/semi_levy.hpp"

namespace slcogtest {

// Driver with period 6.5, four intervals, positive-mean jumps.
inline slcogarch::SemiLevyConfig reference_driver() {
  slcogarch::SemiLevyConfig cfg;
  cfg.period_tau = 6.5;
  cfg.lengths = {0.5, 2.5, 3.0, 0.5};
  cfg.rates = {4.0, 10.0, 5.0, 30.0};
  cfg.jump_dists = {
      std::make_shared<slcogarch::NormalJumps>(2.0, 4.0),
      std::make_shared<slcogarch::NormalJumps>(1.5, 2.5),
      std::make_shared<slcogarch::NormalJumps>(2.5, 1.5),
      std::make_shared<slcogarch::NormalJumps>(1.75, 3.0)};
  cfg.drift_delta = 0.0;
  return cfg;
}

inline slcogarch::CogarchParams reference_params() {
  slcogarch::CogarchParams p;
  p.p = 1;
  p.q = 3;
  p.alpha0 = 1e-6;
  p.a = Eigen::Vector3d(0.005, 0.0, 0.0);
  p.betas = Eigen::Vector3d(2.1, 6.0, 0.6);
  p.y0 = Eigen::Vector3d(0.37e-3, 0.05e-3, 0.19e-3);
  return p;
}

// Zero-mean variant: centred jumps, rescaled level and load.
inline slcogarch::SemiLevyConfig centered_driver() {
  slcogarch::SemiLevyConfig cfg = reference_driver();
  cfg.jump_dists = {
      std::make_shared<slcogarch::NormalJumps>(0.0, 4.0),
      std::make_shared<slcogarch::NormalJumps>(0.0, 2.5),
      std::make_shared<slcogarch::NormalJumps>(0.0, 1.5),
      std::make_shared<slcogarch::NormalJumps>(0.0, 3.0)};
  return cfg;
}

inline slcogarch::CogarchParams centered_params() {
  slcogarch::CogarchParams p = reference_params();
  p.alpha0 = 0.8e-6;
  p.a = Eigen::Vector3d(0.0275, 0.0, 0.0);
  return p;
}

}  // namespace slcogtest
