#include "pulsetrain/twostate.hpp"

#include <cmath>

namespace pulsetrain {

namespace {

constexpr double kNormRejectTol = 1e-6;
constexpr double kDegenerateSinTol = 1e-8;
const Complex kI{0.0, 1.0};

double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

// RK4 on the matrix equation dU/dt = -i H(t) U with U(0) = I.
Eigen::Matrix2cd propagate_2x2(
    const PulseShape& pulse,
    const std::function<Eigen::Matrix2cd(double)>& hamiltonian) {
  const int steps = pulse.grid_steps < 16 ? 16 : pulse.grid_steps;
  const double h = pulse.duration / steps;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Eigen::Matrix2cd k1 = -kI * (hamiltonian(t) * u);
    const Eigen::Matrix2cd k2 =
        -kI * (hamiltonian(t + 0.5 * h) * (u + 0.5 * h * k1));
    const Eigen::Matrix2cd k3 =
        -kI * (hamiltonian(t + 0.5 * h) * (u + 0.5 * h * k2));
    const Eigen::Matrix2cd k4 = -kI * (hamiltonian(t + h) * (u + h * k3));
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!u.allFinite())
    throw std::runtime_error("two-state integrator produced non-finite values");
  return u;
}

}  // namespace

CKPair::CKPair(Complex a, Complex b) : a_(a), b_(b) {
  const double norm2 = std::norm(a_) + std::norm(b_);
  if (std::abs(norm2 - 1.0) > kNormRejectTol)
    throw std::domain_error("CK pair is not on the unit sphere: |a|^2+|b|^2 = " +
                            std::to_string(norm2));
  const double scale = 1.0 / std::sqrt(norm2);
  a_ *= scale;
  b_ *= scale;
}

Eigen::Matrix2cd CKPair::matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, -std::conj(b_), std::conj(a_);
  return m;
}

Eigen::Matrix2cd MSPairSolution::reassemble() const {
  const Complex half_phase = std::exp(-kI * (delta / 2.0));
  return half_phase * ck.matrix();
}

CKPair solve_traceless(const PulseShape& pulse) {
  pulse.validate();
  // Analytic path for resonant rectangular pulses: a = cos(A/2),
  // b = -i e^{i arg Omega0} sin(A/2) with A = |Omega0| T.
  if (pulse.kind == EnvelopeKind::Rectangular &&
      pulse.detuning_kind == DetuningKind::Constant && pulse.delta0 == 0.0) {
    const double area = std::abs(pulse.peak_rabi) * pulse.duration;
    const double phase =
        pulse.peak_rabi == Complex{} ? 0.0 : std::arg(pulse.peak_rabi);
    return CKPair(std::cos(area / 2.0),
                  -kI * std::exp(kI * phase) * std::sin(area / 2.0));
  }
  const Eigen::Matrix2cd u = propagate_2x2(pulse, [&](double t) {
    const auto [rabi, det] = evaluate(pulse, t);
    Eigen::Matrix2cd h;
    h << -0.5 * det, 0.5 * rabi, 0.5 * std::conj(rabi), 0.5 * det;
    return h;
  });
  return CKPair(u(0, 0), u(0, 1));
}

MSPairSolution solve_ms_pair(double lambda, const PulseShape& pulse) {
  pulse.validate();
  if (lambda < 0.0)
    throw std::domain_error("Morris-Shore coupling lambda must be >= 0");
  const Eigen::Matrix2cd u = propagate_2x2(pulse, [&](double t) {
    const auto [rabi, det] = evaluate(pulse, t);
    Eigen::Matrix2cd h;
    h << 0.0, lambda * rabi, lambda * std::conj(rabi), det;
    return h;
  });
  const double delta = accumulated_detuning(pulse);
  // Factor out e^{-i delta/2}: the remaining matrix is SU(2) and its top row
  // is the primed pair.
  const Complex unprime = std::exp(kI * (delta / 2.0));
  return MSPairSolution{CKPair(u(0, 0) * unprime, u(0, 1) * unprime), delta};
}

CKPair su2_power(const CKPair& ck, int n) {
  if (n < 1) throw std::domain_error("pass count N must be >= 1");
  const double re_a = std::real(ck.a());
  const double theta = std::acos(clamp_unit(re_a));
  const double s = std::sin(theta);
  double ratio;
  if (std::abs(s) < kDegenerateSinTol) {
    // sin(N theta)/sin(theta) -> N at theta = 0 and N (-1)^{N+1} at theta = pi
    ratio = (re_a >= 0.0) ? static_cast<double>(n)
                          : static_cast<double>(n) * (n % 2 == 1 ? 1.0 : -1.0);
  } else {
    ratio = std::sin(n * theta) / s;
  }
  const Complex a_n =
      std::cos(n * theta) + kI * std::imag(ck.a()) * ratio;
  const Complex b_n = ck.b() * ratio;
  return CKPair(a_n, b_n);  // constructor renormalizes rounding drift
}

PrimedPower primed_power(const MSPairSolution& sol, int n) {
  const CKPair powered = su2_power(sol.ck, n);
  const Complex phase = std::exp(-kI * (n * sol.delta / 2.0));
  return PrimedPower{CKPair(powered.a() * phase, powered.b() * phase),
                     n * sol.delta};
}

Eigen::Matrix2cd PrimedPower::reassemble() const {
  const Complex det_phase = std::exp(-kI * total_phase);
  Eigen::Matrix2cd m;
  m << ck.a(), ck.b(), -std::conj(ck.b()) * det_phase,
      std::conj(ck.a()) * det_phase;
  return m;
}

PowerAngle power_angle(const CKPair& ck) {
  return PowerAngle{std::acos(clamp_unit(std::real(ck.a())))};
}

}  // namespace pulsetrain
