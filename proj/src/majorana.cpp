#include "pulsetrain/majorana.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pulsetrain {

namespace {

constexpr double kDegenerateSinTol = 1e-8;
const Complex kI{0.0, 1.0};

double factorial(int n) {
  static const auto table = [] {
    std::array<double, kMaxMajoranaStates + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxMajoranaStates; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

Complex pow_int(Complex base, int exp) {
  Complex result{1.0, 0.0};
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

void check_m(int m_states) {
  if (m_states < 2) throw std::domain_error("Majorana system needs M >= 2");
  if (m_states > kMaxMajoranaStates)
    throw std::domain_error("M exceeds the factorial-precision bound of 30");
}

}  // namespace

Eigen::MatrixXcd build_hamiltonian(int m_states, Complex rabi,
                                   double detuning) {
  check_m(m_states);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m_states, m_states);
  for (int k = 1; k <= m_states; ++k)
    h(k - 1, k - 1) = (k - (m_states + 1) / 2.0) * detuning;
  for (int k = 1; k < m_states; ++k) {
    const double coupling = 0.5 * std::sqrt(double(k) * (m_states - k));
    h(k - 1, k) = coupling * rabi;
    h(k, k - 1) = coupling * std::conj(rabi);
  }
  return h;
}

Complex wigner_element(const CKPair& ck, int m_states, int k, int l) {
  check_m(m_states);
  if (k < 1 || k > m_states || l < 1 || l > m_states)
    throw std::domain_error("propagator indices must lie in [1, M]");
  const Complex a = ck.a();
  const Complex b = ck.b();
  // All r for which every factorial argument is nonnegative; terms outside
  // vanish by the 1/(-n)! = 0 convention.
  const int r_lo = std::max(0, l - k);
  const int r_hi = std::min(l - 1, m_states - k);
  const double prefactor =
      std::sqrt(factorial(k - 1) * factorial(l - 1) * factorial(m_states - k) *
                factorial(m_states - l));
  Complex sum{0.0, 0.0};
  for (int r = r_lo; r <= r_hi; ++r) {
    const double denom = factorial(l - 1 - r) * factorial(m_states - k - r) *
                         factorial(r - l + k) * factorial(r);
    sum += pow_int(a, m_states - k - r) * pow_int(std::conj(a), l - 1 - r) *
           pow_int(b, r) * pow_int(-std::conj(b), r - l + k) / denom;
  }
  return prefactor * sum;
}

MajoranaPropagator propagator_from_ck(const CKPair& ck, int m_states) {
  check_m(m_states);
  Eigen::MatrixXcd u(m_states, m_states);
  for (int k = 1; k <= m_states; ++k)
    for (int l = 1; l <= m_states; ++l)
      u(k - 1, l - 1) = wigner_element(ck, m_states, k, l);
  return MajoranaPropagator{m_states, std::move(u), ck};
}

MajoranaPropagator npass_propagator(const CKPair& ck, int m_states, int n) {
  return propagator_from_ck(su2_power(ck, n), m_states);
}

DiagFactors diag_factors(const CKPair& ck) {
  const double theta = power_angle(ck).theta;
  const double s = std::sin(theta);
  if (std::abs(s) < kDegenerateSinTol)
    throw DegenerateAngleError(
        "sin(theta) is numerically zero; use npass_propagator, which handles "
        "this limit");
  const double u_sq = (s - std::imag(ck.a())) / (2.0 * s);
  // Gauge: u real nonnegative; v carries the phase of -i b.
  const double u_mag = std::sqrt(std::max(0.0, u_sq));
  Complex u, v;
  if (u_mag < 1e-12) {
    u = Complex{0.0, 0.0};
    v = std::sqrt(std::max(0.0, (s + std::imag(ck.a())) / (2.0 * s)));
  } else {
    u = u_mag;
    v = -kI * ck.b() / (2.0 * u_mag * s);
  }
  return DiagFactors{u, v, theta};
}

MajoranaPropagator npass_via_diagonalization(const CKPair& ck, int m_states,
                                             int n) {
  check_m(m_states);
  const DiagFactors f = diag_factors(ck);
  const Eigen::MatrixXcd v =
      propagator_from_ck(CKPair(f.u, f.v), m_states).matrix;
  Eigen::VectorXcd d(m_states);
  for (int k = 1; k <= m_states; ++k)
    d(k - 1) = std::exp(kI * (n * (2.0 * k - 1.0 - m_states) * f.theta));
  Eigen::MatrixXcd u = v * d.asDiagonal() * v.adjoint();
  return MajoranaPropagator{m_states, std::move(u), ck};
}

std::pair<double, double> three_state_probabilities(double theta, int n) {
  if (n < 1) throw std::domain_error("pass count N must be >= 1");
  const double s = std::sin(n * theta);
  return {s * s, s * s * s * s};
}

}  // namespace pulsetrain
