#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace slcogarch {

// Selector for the L^infinity operator norm in the functions below, next to
// the literal orders 1 and 2.
inline constexpr int kNormInf = -1;

// Raised when the companion matrix has (numerically) repeated eigenvalues,
// which the diagonalisation-based machinery cannot handle.
struct DistinctnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// q x q companion matrix of the coefficients beta_1..beta_q: ones on the
// superdiagonal, last row (-beta_q, ..., -beta_1).  Requires beta_q != 0.
Eigen::MatrixXd companion_matrix(const Eigen::VectorXd& betas);

// Roots of z^q + beta_1 z^{q-1} + ... + beta_q, by Durand-Kerner iteration
// with a Newton polish.  Conjugate pairs are symmetrised exactly and the
// result is sorted by (real, imaginary) part.
Eigen::VectorXcd companion_roots(const Eigen::VectorXd& betas);

// Eigen-decomposition of a companion matrix through its characteristic
// polynomial: distinct roots eta_i, the Vandermonde matrix P with columns
// (1, eta_i, ..., eta_i^{q-1})', and P^{-1} via partial-pivot LU.
struct EigenStructure {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd vandermonde;      // P
  Eigen::MatrixXcd vandermonde_inv;  // P^{-1}
  double eta_max = 0.0;              // max_i Re(eta_i)
  double condition_estimate = 0.0;   // ||P||_1 * ||P^{-1}||_1
};

// Throws DistinctnessError when the minimum pairwise root distance falls
// below 1e-8 * max |eta|.  condition_estimate above 1e12 indicates a nearly
// defective basis; callers may warn.
EigenStructure eigen_structure(const Eigen::VectorXd& betas);

// exp(B t) = Re(P diag(exp(eta_i t)) P^{-1}).  The imaginary residue must be
// below 1e-10 relative (conjugate symmetry); it is checked and dropped.
Eigen::MatrixXd mat_exp(const EigenStructure& eig, double t);

// exp(B t) * y without forming the matrix.
Eigen::VectorXd mat_exp_apply(const EigenStructure& eig, double t,
                              const Eigen::VectorXd& y);

// Operator norms: r = 1 max absolute column sum, r = kNormInf max absolute
// row sum, r = 2 spectral norm by power iteration on C* C to 1e-12 relative.
double lr_norm(const Eigen::MatrixXcd& c, int r);
double lr_norm(const Eigen::MatrixXd& c, int r);
double lr_vector_norm(const Eigen::VectorXcd& c, int r);

// Norms after the change of basis that diagonalises the companion matrix:
// ||C||_{P,r} = ||P^{-1} C P||_r and ||c||_{P,r} = ||P^{-1} c||_r.
double natural_norm(const Eigen::MatrixXcd& c, const EigenStructure& eig,
                    int r);
double natural_norm(const Eigen::MatrixXd& c, const EigenStructure& eig,
                    int r);
double natural_vector_norm(const Eigen::VectorXcd& c,
                           const EigenStructure& eig, int r);

}  // namespace slcogarch
