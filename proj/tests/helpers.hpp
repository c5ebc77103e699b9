#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "pulsetrain/twostate.hpp"

namespace test_helpers {

using pulsetrain::CKPair;
using pulsetrain::Complex;

inline CKPair random_ck(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Complex a{gauss(rng), gauss(rng)};
  Complex b{gauss(rng), gauss(rng)};
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return CKPair(a / norm, b / norm);
}

// A CK pair with the requested rotation angle: a = cos(theta) e^{i phi_a}
// mixed so that Re a = cos(theta) stays exact.
inline CKPair ck_with_angle(std::mt19937_64& rng, double theta) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.141592653589793);
  const double phi = uni(rng);
  const double chi = uni(rng);
  // |b|^2 = sin^2(theta) - Im(a)^2 with Im(a) = sin(theta) sin(chi)
  const double im_a = std::sin(theta) * std::sin(chi);
  const double b_mag = std::abs(std::sin(theta) * std::cos(chi));
  return CKPair(Complex{std::cos(theta), im_a},
                b_mag * std::exp(Complex{0.0, phi}));
}

// Plain N-fold product, one multiplication at a time.
inline Eigen::MatrixXcd naive_power(const Eigen::MatrixXcd& u, int n) {
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  for (int i = 0; i < n; ++i) result = result * u;
  return result;
}

// e^{-i H t} for a constant Hermitian H via its eigendecomposition.
inline Eigen::MatrixXcd spectral_exponential(const Eigen::MatrixXcd& h,
                                             double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto& vals = es.eigenvalues();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    phases(i) = std::exp(Complex{0.0, -vals(i) * t});
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows,
                                      int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex{gauss(rng), gauss(rng)};
  return m;
}

}  // namespace test_helpers
