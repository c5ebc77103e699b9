#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pulsetrain {

using Complex = std::complex<double>;

enum class EnvelopeKind { Rectangular, Gaussian, SinSquared, Sampled };
enum class DetuningKind { Constant, LinearChirp, Sampled };

/// One pulse of the train: Rabi envelope Omega(t) = peak_rabi * f(t) with
/// f peaking at 1, plus a detuning profile Delta(t), on the interval [0, T].
struct PulseShape {
  EnvelopeKind kind = EnvelopeKind::Rectangular;
  Complex peak_rabi{0.0, 0.0};
  double duration = 1.0;

  // gaussian only
  double gauss_center = 0.5;
  double gauss_width = 0.1;

  // sampled envelope on a uniform grid over [0, T]
  std::vector<double> envelope_samples;

  DetuningKind detuning_kind = DetuningKind::Constant;
  double delta0 = 0.0;
  double chirp_rate = 0.0;  // Delta(t) = delta0 + chirp_rate * t
  std::vector<double> detuning_samples;

  // uniform integration grid shared by quadrature and the propagator solvers
  int grid_steps = 2048;

  static PulseShape rectangular(Complex peak_rabi, double duration,
                                double delta0 = 0.0, double chirp = 0.0);
  static PulseShape sin_squared(Complex peak_rabi, double duration,
                                double delta0 = 0.0, double chirp = 0.0);
  static PulseShape gaussian(Complex peak_rabi, double duration, double center,
                             double width, double delta0 = 0.0,
                             double chirp = 0.0);
  static PulseShape sampled(Complex peak_rabi,
                            std::vector<double> envelope_samples,
                            double duration, double delta0 = 0.0);

  /// Normalized envelope f(t), dimensionless, f in [0, 1] for standard kinds.
  double envelope(double t) const;
  /// Detuning Delta(t).
  double detuning_at(double t) const;

  void validate() const;
};

/// Rabi frequency and detuning at time t; throws std::domain_error outside [0, T].
std::pair<Complex, double> evaluate(const PulseShape& pulse, double t);

/// Accumulated detuning delta = integral of Delta(t) over [0, T] (composite Simpson).
double accumulated_detuning(const PulseShape& pulse);

/// Pulse area A = integral of |Omega(t)| over [0, T].
double pulse_area(const PulseShape& pulse);

}  // namespace pulsetrain
