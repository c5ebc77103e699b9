#include "pulsetrain/morris_shore.hpp"

#include <cmath>

namespace pulsetrain {

namespace {

const Complex kI{0.0, 1.0};

void check_system(const Eigen::MatrixXcd& omega) {
  if (omega.rows() < omega.cols())
    throw std::domain_error(
        "coupling matrix needs L >= M; transpose to swap the ground and "
        "excited roles");
  if (omega.cwiseAbs().maxCoeff() == 0.0)
    throw std::domain_error("coupling matrix is identically zero");
}

// Block transformation matrix S = blockdiag(s_l, s_m).
Eigen::MatrixXcd block_transform(const MSDecomposition& d) {
  const auto l = d.s_l.rows();
  const auto m = d.s_m.rows();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(l + m, l + m);
  s.topLeftCorner(l, l) = d.s_l;
  s.bottomRightCorner(m, m) = d.s_m;
  return s;
}

// Assembles the full propagator from per-channel 2x2 blocks: channel m
// couples MS ground state m with MS excited state L + m, dark states are
// untouched, then rotates back to the original basis.
MSPropagator assemble(const MSSystem& system, const MSDecomposition& d,
                      std::vector<MSPairSolution> pairs, int n) {
  const int l = system.ground_count();
  const int m = system.excited_count();
  Eigen::MatrixXcd u_ms = Eigen::MatrixXcd::Identity(l + m, l + m);
  for (int i = 0; i < m; ++i) {
    const Eigen::Matrix2cd block = primed_power(pairs[i], n).reassemble();
    u_ms(i, i) = block(0, 0);
    u_ms(i, l + i) = block(0, 1);
    u_ms(l + i, i) = block(1, 0);
    u_ms(l + i, l + i) = block(1, 1);
  }
  const Eigen::MatrixXcd s = block_transform(d);
  return MSPropagator{l + m, s.adjoint() * u_ms * s, std::move(pairs), n};
}

std::vector<MSPairSolution> solve_channels(const MSSystem& system,
                                           const MSDecomposition& d) {
  std::vector<MSPairSolution> pairs;
  pairs.reserve(d.lambdas.size());
  for (double lambda : d.lambdas)
    pairs.push_back(solve_ms_pair(lambda, system.pulse));
  return pairs;
}

}  // namespace

int MSDecomposition::rank() const {
  if (lambdas.empty()) return 0;
  const double cutoff = 1e-12 * lambdas.front();
  int r = 0;
  for (double l : lambdas)
    if (l > cutoff) ++r;
  return r;
}

MSDecomposition decompose(const Eigen::MatrixXcd& omega) {
  check_system(omega);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      omega, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // omega = P Sigma Q^dagger with descending singular values; s_l = P^dagger
  // and s_m = Q^dagger make s_l omega s_m^dagger = Sigma.
  MSDecomposition d;
  d.s_l = svd.matrixU().adjoint();
  d.s_m = svd.matrixV().adjoint();
  const auto& sv = svd.singularValues();
  d.lambdas.assign(sv.data(), sv.data() + sv.size());
  d.dark_count = static_cast<int>(omega.rows() - omega.cols());
  return d;
}

MSPropagator single_pass(const MSSystem& system) {
  return multi_pass(system, 1);
}

MSPropagator multi_pass(const MSSystem& system, int n) {
  if (n < 1) throw std::domain_error("pass count N must be >= 1");
  const MSDecomposition d = decompose(system.omega);
  return assemble(system, d, solve_channels(system, d), n);
}

Eigen::MatrixXcd multipod_npass(const std::vector<Complex>& omegas,
                                const CKPair& ck, double delta, int n) {
  const int l = static_cast<int>(omegas.size());
  double norm2 = 0.0;
  for (const Complex& o : omegas) norm2 += std::norm(o);
  if (norm2 == 0.0)
    throw std::domain_error("multipod needs at least one nonzero coupling");
  const double norm = std::sqrt(norm2);

  const Complex primed_a = ck.a() * std::exp(kI * (delta / 2.0));
  const Complex primed_b = ck.b() * std::exp(kI * (delta / 2.0));
  const PrimedPower p =
      primed_power(MSPairSolution{CKPair(primed_a, primed_b), delta}, n);
  const Complex a_n = p.ck.a();
  const Complex b_n = p.ck.b();
  const Complex det_phase = std::exp(-kI * (n * delta));

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(l + 1, l + 1);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j)
      u(i, j) += (a_n - 1.0) * omegas[i] * std::conj(omegas[j]) / norm2;
    u(i, l) = b_n * omegas[i] / norm;
    u(l, i) = -std::conj(b_n) * std::conj(omegas[i]) * det_phase / norm;
  }
  u(l, l) = std::conj(a_n) * det_phase;
  return u;
}

Eigen::MatrixXcd lambda_npass(Complex omega1, Complex omega2, const CKPair& ck,
                              double delta, int n) {
  return multipod_npass({omega1, omega2}, ck, delta, n);
}

Eigen::MatrixXcd tripod_npass(Complex omega1, Complex omega2, Complex omega3,
                              const CKPair& ck, double delta, int n) {
  return multipod_npass({omega1, omega2, omega3}, ck, delta, n);
}

std::vector<Eigen::VectorXcd> dark_basis(const Eigen::MatrixXcd& omega) {
  check_system(omega);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(omega, Eigen::ComputeFullU);
  const double cutoff = 1e-12 * svd.singularValues()(0);
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < omega.rows(); ++i) {
    const bool coupled = i < svd.singularValues().size() &&
                         svd.singularValues()(i) > cutoff;
    if (!coupled) basis.push_back(svd.matrixU().col(i));
  }
  return basis;
}

}  // namespace pulsetrain
