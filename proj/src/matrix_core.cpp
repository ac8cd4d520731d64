#include "slcogarch/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace slcogarch {

namespace {

using Cplx = std::complex<double>;

// Horner evaluation of z^q + beta_1 z^{q-1} + ... + beta_q and its
// derivative.
Cplx poly_eval(const Eigen::VectorXd& betas, Cplx z) {
  Cplx v(1.0, 0.0);
  for (int i = 0; i < betas.size(); ++i) v = v * z + betas[i];
  return v;
}

Cplx poly_deriv(const Eigen::VectorXd& betas, Cplx z) {
  const int q = static_cast<int>(betas.size());
  Cplx v(static_cast<double>(q), 0.0);
  for (int i = 0; i < q - 1; ++i)
    v = v * z + static_cast<double>(q - 1 - i) * betas[i];
  return v;
}

// Pairs near-conjugate roots and makes the pairing exact; isolated roots
// with negligible imaginary part are snapped to the real axis.  Real
// coefficients guarantee the root set is closed under conjugation, so this
// only removes iteration noise.
void symmetrise_conjugates(std::vector<Cplx>& roots) {
  double scale = 0.0;
  for (const Cplx& z : roots) scale = std::max(scale, std::abs(z));
  const double tol = 1e-8 * std::max(scale, 1.0);

  std::vector<bool> done(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (done[i]) continue;
    if (std::abs(roots[i].imag()) <= tol) {
      roots[i] = Cplx(roots[i].real(), 0.0);
      done[i] = true;
      continue;
    }
    std::size_t best = i;
    double best_dist = std::numeric_limits<double>::max();
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (done[j]) continue;
      const double dist = std::abs(roots[j] - std::conj(roots[i]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best != i && best_dist <= 1e-6 * std::max(scale, 1.0)) {
      const Cplx mean = 0.5 * (roots[i] + std::conj(roots[best]));
      roots[i] = mean;
      roots[best] = std::conj(mean);
      done[i] = done[best] = true;
    } else {
      done[i] = true;
    }
  }
}

}  // namespace

Eigen::MatrixXd companion_matrix(const Eigen::VectorXd& betas) {
  const int q = static_cast<int>(betas.size());
  if (q < 1) throw std::invalid_argument("companion_matrix: need q >= 1");
  if (betas[q - 1] == 0.0)
    throw std::invalid_argument("companion_matrix: beta_q must be non-zero");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i + 1 < q; ++i) b(i, i + 1) = 1.0;
  for (int j = 0; j < q; ++j) b(q - 1, j) = -betas[q - 1 - j];
  return b;
}

Eigen::VectorXcd companion_roots(const Eigen::VectorXd& betas) {
  const int q = static_cast<int>(betas.size());
  if (q < 1) throw std::invalid_argument("companion_roots: need q >= 1");
  if (q == 1) {
    Eigen::VectorXcd out(1);
    out[0] = Cplx(-betas[0], 0.0);
    return out;
  }

  // Cauchy bound on the root moduli.
  double radius = 0.0;
  for (int i = 0; i < q; ++i) radius = std::max(radius, std::abs(betas[i]));
  radius = 1.0 + radius;

  // Durand-Kerner from non-symmetric starting angles.
  std::vector<Cplx> z(q);
  for (int k = 0; k < q; ++k) {
    const double angle = 2.0 * M_PI * (k + 0.25) / q + 0.5;
    z[k] = 0.8 * radius * Cplx(std::cos(angle), std::sin(angle));
  }
  for (int iter = 0; iter < 500; ++iter) {
    double max_step = 0.0;
    double max_abs = 0.0;
    for (int k = 0; k < q; ++k) {
      Cplx denom(1.0, 0.0);
      for (int j = 0; j < q; ++j)
        if (j != k) denom *= z[k] - z[j];
      if (denom == Cplx(0.0, 0.0)) {
        // Collided iterates: nudge and continue.
        z[k] += Cplx(1e-8 * radius, 1e-8 * radius);
        continue;
      }
      const Cplx step = poly_eval(betas, z[k]) / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step));
      max_abs = std::max(max_abs, std::abs(z[k]));
    }
    if (max_step <= 1e-14 * std::max(1.0, max_abs)) break;
  }

  // Newton polish.
  for (int k = 0; k < q; ++k) {
    for (int it = 0; it < 4; ++it) {
      const Cplx d = poly_deriv(betas, z[k]);
      if (std::abs(d) == 0.0) break;
      z[k] -= poly_eval(betas, z[k]) / d;
    }
  }

  symmetrise_conjugates(z);
  std::sort(z.begin(), z.end(), [](const Cplx& a, const Cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  Eigen::VectorXcd out(q);
  for (int k = 0; k < q; ++k) out[k] = z[k];
  return out;
}

EigenStructure eigen_structure(const Eigen::VectorXd& betas) {
  const int q = static_cast<int>(betas.size());
  if (q < 1) throw std::invalid_argument("eigen_structure: need q >= 1");
  if (betas[q - 1] == 0.0)
    throw std::invalid_argument("eigen_structure: beta_q must be non-zero");

  EigenStructure eig;
  eig.eigenvalues = companion_roots(betas);

  double max_abs = 0.0;
  for (int i = 0; i < q; ++i)
    max_abs = std::max(max_abs, std::abs(eig.eigenvalues[i]));
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (std::abs(eig.eigenvalues[i] - eig.eigenvalues[j]) <
          1e-8 * max_abs)
        throw DistinctnessError(
            "eigen_structure: companion eigenvalues are not distinct");

  eig.vandermonde.resize(q, q);
  for (int j = 0; j < q; ++j) {
    Cplx power(1.0, 0.0);
    for (int i = 0; i < q; ++i) {
      eig.vandermonde(i, j) = power;
      power *= eig.eigenvalues[j];
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(eig.vandermonde);
  eig.vandermonde_inv =
      lu.solve(Eigen::MatrixXcd::Identity(q, q));

  eig.eta_max = eig.eigenvalues[0].real();
  for (int i = 1; i < q; ++i)
    eig.eta_max = std::max(eig.eta_max, eig.eigenvalues[i].real());
  eig.condition_estimate = lr_norm(eig.vandermonde, 1) *
                           lr_norm(eig.vandermonde_inv, 1);
  return eig;
}

Eigen::MatrixXd mat_exp(const EigenStructure& eig, double t) {
  const int q = static_cast<int>(eig.eigenvalues.size());
  if (t == 0.0) return Eigen::MatrixXd::Identity(q, q);
  Eigen::VectorXcd diag(q);
  for (int i = 0; i < q; ++i) diag[i] = std::exp(eig.eigenvalues[i] * t);
  const Eigen::MatrixXcd full =
      eig.vandermonde * diag.asDiagonal() * eig.vandermonde_inv;
  const double re_norm = full.real().cwiseAbs().maxCoeff();
  const double im_norm = full.imag().cwiseAbs().maxCoeff();
  if (im_norm > 1e-10 * std::max(1.0, re_norm))
    throw std::runtime_error("mat_exp: imaginary residue above tolerance");
  return full.real();
}

Eigen::VectorXd mat_exp_apply(const EigenStructure& eig, double t,
                              const Eigen::VectorXd& y) {
  if (t == 0.0) return y;
  Eigen::VectorXcd w = eig.vandermonde_inv * y.cast<Cplx>();
  for (int i = 0; i < w.size(); ++i)
    w[i] *= std::exp(eig.eigenvalues[i] * t);
  return (eig.vandermonde * w).real();
}

namespace {

double spectral_norm(const Eigen::MatrixXcd& c) {
  const int n = static_cast<int>(c.cols());
  if (c.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  // Power iteration on C* C; deterministic non-degenerate start.
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i)
    v[i] = Cplx(1.0 + 0.013 * i, 0.37 - 0.011 * i);
  v.normalize();

  // With v normalised, ||C v|| is the Rayleigh estimate of sigma_max; stop
  // when its relative change drops below 1e-12.
  double estimate = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXcd w = c.adjoint() * (c * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double current = (c * v).norm();
    if (iter > 0 && std::abs(current - estimate) <= 1e-12 * current) {
      estimate = current;
      break;
    }
    estimate = current;
  }
  return estimate;
}

}  // namespace

double lr_norm(const Eigen::MatrixXcd& c, int r) {
  switch (r) {
    case 1:
      return c.cwiseAbs().colwise().sum().maxCoeff();
    case 2:
      return spectral_norm(c);
    case kNormInf:
      return c.cwiseAbs().rowwise().sum().maxCoeff();
    default:
      throw std::invalid_argument("lr_norm: r must be 1, 2 or kNormInf");
  }
}

double lr_norm(const Eigen::MatrixXd& c, int r) {
  return lr_norm(Eigen::MatrixXcd(c.cast<Cplx>()), r);
}

double lr_vector_norm(const Eigen::VectorXcd& c, int r) {
  switch (r) {
    case 1:
      return c.cwiseAbs().sum();
    case 2:
      return c.norm();
    case kNormInf:
      return c.cwiseAbs().maxCoeff();
    default:
      throw std::invalid_argument("lr_vector_norm: r must be 1, 2 or kNormInf");
  }
}

double natural_norm(const Eigen::MatrixXcd& c, const EigenStructure& eig,
                    int r) {
  return lr_norm(
      Eigen::MatrixXcd(eig.vandermonde_inv * c * eig.vandermonde), r);
}

double natural_norm(const Eigen::MatrixXd& c, const EigenStructure& eig,
                    int r) {
  return natural_norm(Eigen::MatrixXcd(c.cast<Cplx>()), eig, r);
}

double natural_vector_norm(const Eigen::VectorXcd& c,
                           const EigenStructure& eig, int r) {
  return lr_vector_norm(Eigen::VectorXcd(eig.vandermonde_inv * c), r);
}

}  // namespace slcogarch
