#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "pulsetrain/morris_shore.hpp"
#include "pulsetrain/oracle.hpp"

using namespace pulsetrain;
using test_helpers::max_dev;
using test_helpers::naive_power;
using test_helpers::random_ck;
using test_helpers::random_matrix;

namespace {

oracle::TimeDependentHamiltonian full_hamiltonian(const MSSystem& sys) {
  const int l = sys.ground_count();
  const int m = sys.excited_count();
  return {l + m, [sys, l, m](double t) {
            const auto [rabi, det] = evaluate(sys.pulse, t);
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(l + m, l + m);
            h.topRightCorner(l, m) = rabi * sys.omega;
            h.bottomLeftCorner(m, l) = std::conj(rabi) * sys.omega.adjoint();
            h.bottomRightCorner(m, m) =
                det * Eigen::MatrixXcd::Identity(m, m);
            return h;
          }};
}

}  // namespace

TEST_CASE("decomposition diagonalizes the coupling matrix") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> dim(1, 8);
    const int l = dim(rng);
    std::uniform_int_distribution<int> mdim(1, l);
    const int m = mdim(rng);
    const Eigen::MatrixXcd omega = random_matrix(rng, l, m);
    const MSDecomposition d = decompose(omega);
    CHECK(oracle::unitarity_defect(d.s_l) < 1e-10);
    CHECK(oracle::unitarity_defect(d.s_m) < 1e-10);
    CHECK(d.dark_count == l - m);
    const Eigen::MatrixXcd diag = d.s_l * omega * d.s_m.adjoint();
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) {
          CHECK(std::abs(diag(i, j) - d.lambdas[static_cast<size_t>(i)]) <
                1e-10);
        } else {
          CHECK(std::abs(diag(i, j)) < 1e-10);
        }
      }
    for (std::size_t i = 1; i < d.lambdas.size(); ++i)
      CHECK(d.lambdas[i] <= d.lambdas[i - 1] + 1e-14);
  }
}

TEST_CASE("decompose rejects L < M and empty couplings") {
  std::mt19937_64 rng(4);
  CHECK_THROWS_AS(decompose(random_matrix(rng, 2, 3)), std::domain_error);
  CHECK_THROWS_AS(decompose(Eigen::MatrixXcd::Zero(3, 2)), std::domain_error);
}

TEST_CASE("dark states are annihilated by the coupling") {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXcd omega = random_matrix(rng, 6, 2);
  const auto dark = dark_basis(omega);
  CHECK(dark.size() == 4);
  for (const auto& v : dark) {
    CHECK((omega.adjoint() * v).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single pass agrees with the full ODE oracle") {
  std::mt19937_64 rng(8);
  const std::vector<std::pair<int, int>> shapes{{2, 1}, {3, 1}, {3, 2}, {6, 3}};
  for (auto [l, m] : shapes) {
    MSSystem sys{random_matrix(rng, l, m),
                 PulseShape::gaussian({1.7, 0.4}, 1.0, 0.5, 0.18, 0.3, 0.6)};
    const MSPropagator u = single_pass(sys);
    CHECK(u.dim == l + m);
    const auto ref = oracle::integrate(full_hamiltonian(sys), sys.pulse.duration,
                                       oracle::kVerifySteps);
    CHECK(max_dev(u.matrix, ref) < 1e-7);
    CHECK(oracle::unitarity_defect(u.matrix) < 1e-9);
  }
}

TEST_CASE("multi pass equals the repeated single pass") {
  std::mt19937_64 rng(10);
  MSSystem sys{random_matrix(rng, 4, 2),
               PulseShape::sin_squared({1.1, -0.2}, 1.0, 0.4, 0.3)};
  const Eigen::MatrixXcd single = single_pass(sys).matrix;
  for (int n : {1, 2, 5, 20, 50}) {
    const MSPropagator u = multi_pass(sys, n);
    CHECK(u.n_passes == n);
    CHECK(max_dev(u.matrix, naive_power(single, n)) < 1e-9);
  }
}

TEST_CASE("dark channels never move") {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXcd omega = random_matrix(rng, 5, 2);
  MSSystem sys{omega, PulseShape::sin_squared({2.0, 0.1}, 1.0, 0.5)};
  const Eigen::MatrixXcd u = multi_pass(sys, 7).matrix;
  for (const auto& v : dark_basis(omega)) {
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(7);
    padded.head(5) = v;
    CHECK((u * padded - padded).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("multipod closed form equals the general MS path") {
  std::mt19937_64 rng(14);
  for (int l : {2, 3, 5}) {
    std::vector<Complex> omegas(static_cast<size_t>(l));
    Eigen::MatrixXcd column(l, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < l; ++i) {
      omegas[static_cast<size_t>(i)] = Complex{gauss(rng), gauss(rng)};
      column(i, 0) = omegas[static_cast<size_t>(i)];
    }
    MSSystem sys{column, PulseShape::gaussian({1.3, 0.2}, 1.0, 0.5, 0.2, 0.4)};
    const MSPropagator full = single_pass(sys);
    // recover the unprimed bright pair from the channel solution
    const MSPairSolution& pair = full.pairs.front();
    const Complex unprime = std::exp(Complex{0.0, -pair.delta / 2.0});
    const CKPair ck(pair.ck.a() * unprime, pair.ck.b() * unprime);
    for (int n : {1, 2, 6, 25}) {
      const Eigen::MatrixXcd closed = multipod_npass(omegas, ck, pair.delta, n);
      CHECK(max_dev(closed, multi_pass(sys, n).matrix) < 1e-10);
    }
  }
}

TEST_CASE("lambda and tripod specializations match the multipod") {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Complex w1{gauss(rng), gauss(rng)}, w2{gauss(rng), gauss(rng)},
      w3{gauss(rng), gauss(rng)};
  const CKPair ck = random_ck(rng);
  const double delta = 1.1;
  for (int n : {1, 3, 12}) {
    CHECK(max_dev(lambda_npass(w1, w2, ck, delta, n),
                  multipod_npass({w1, w2}, ck, delta, n)) < 1e-14);
    CHECK(max_dev(tripod_npass(w1, w2, w3, ck, delta, n),
                  multipod_npass({w1, w2, w3}, ck, delta, n)) < 1e-14);
  }
}

TEST_CASE("multipod block structure") {
  std::mt19937_64 rng(18);
  const CKPair ck = random_ck(rng);
  const std::vector<Complex> omegas{{1.0, 0.0}, {0.0, 1.0}, {-0.7, 0.2}};
  const double delta = 0.9;
  const int n = 4;
  const Eigen::MatrixXcd u = multipod_npass(omegas, ck, delta, n);
  CHECK(u.rows() == 4);
  CHECK(oracle::unitarity_defect(u) < 1e-12);
  // corner element a'_N^* e^{-i N delta}
  const PrimedPower p = primed_power(MSPairSolution{
      CKPair(ck.a() * std::exp(Complex{0.0, delta / 2.0}),
             ck.b() * std::exp(Complex{0.0, delta / 2.0})),
      delta}, n);
  CHECK(std::abs(u(3, 3) - std::conj(p.ck.a()) *
                               std::exp(Complex{0.0, -n * delta})) < 1e-12);
}

TEST_CASE("equal-coupling multipod transition probability") {
  // with all couplings equal the bright state is the symmetric combination;
  // starting from ground 1 the excited population is |b_N|^2 / L
  const int l = 4;
  const double theta = 0.6;
  const CKPair ck(std::cos(theta), Complex{0.0, -std::sin(theta)});
  const std::vector<Complex> omegas(l, Complex{1.0, 0.0});
  for (int n : {1, 2, 7}) {
    const Eigen::MatrixXcd u = multipod_npass(omegas, ck, 0.0, n);
    const double s = std::sin(n * theta);
    CHECK(std::norm(u(l, 0)) == doctest::Approx(s * s / l).epsilon(1e-10));
  }
}
