#include "pulsetrain/oracle.hpp"

#include <complex>
#include <stdexcept>

namespace pulsetrain::oracle {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

Eigen::MatrixXcd integrate(const TimeDependentHamiltonian& h, double duration,
                           int steps) {
  if (steps < 16) throw std::domain_error("oracle integration needs >= 16 steps");
  const double dt = duration / steps;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(h.dim, h.dim);
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const Eigen::MatrixXcd h0 = h.evaluate(t);
    const Eigen::MatrixXcd h1 = h.evaluate(t + 0.5 * dt);
    const Eigen::MatrixXcd h2 = h.evaluate(t + dt);
    const Eigen::MatrixXcd k1 = -kI * (h0 * u);
    const Eigen::MatrixXcd k2 = -kI * (h1 * (u + 0.5 * dt * k1));
    const Eigen::MatrixXcd k3 = -kI * (h1 * (u + 0.5 * dt * k2));
    const Eigen::MatrixXcd k4 = -kI * (h2 * (u + dt * k3));
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!u.allFinite())
    throw std::runtime_error("oracle integration produced non-finite values");
  return u;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& u, int n) {
  if (u.rows() != u.cols()) throw std::domain_error("matrix must be square");
  if (n < 1) throw std::domain_error("power must be >= 1");
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  Eigen::MatrixXcd base = u;
  int k = n;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd defect =
      u.adjoint() * u -
      Eigen::MatrixXcd::Identity(u.cols(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

double max_abs_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pulsetrain::oracle
