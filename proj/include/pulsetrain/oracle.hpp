#pragma once

#include <Eigen/Dense>
#include <functional>

namespace pulsetrain::oracle {

/// A time-dependent Hermitian matrix H(t), used only for brute-force
/// verification. Keeps no link to the formula modules.
struct TimeDependentHamiltonian {
  int dim;
  std::function<Eigen::MatrixXcd(double)> evaluate;
};

/// RK4 propagation of i dU/dt = H(t) U, U(0) = I. Fixed step, steps >= 16.
Eigen::MatrixXcd integrate(const TimeDependentHamiltonian& h, double duration,
                           int steps);

inline constexpr int kVerifySteps = 8192;

/// N-fold matrix product by binary exponentiation (no eigendecomposition).
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& u, int n);

/// Max-norm of U^dagger U - I.
double unitarity_defect(const Eigen::MatrixXcd& u);

/// Max-norm of A - B.
double max_abs_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace pulsetrain::oracle
