#include "pulsetrain/pulses.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace pulsetrain {

namespace {

double interp_uniform(const std::vector<double>& samples, double t, double T) {
  if (samples.size() == 1) return samples.front();
  const double x = t / T * static_cast<double>(samples.size() - 1);
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= samples.size()) return samples.back();
  const double frac = x - static_cast<double>(i);
  return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
}

int default_grid_steps() {
  if (const char* env = std::getenv("PULSETRAIN_STEPS")) {
    const int steps = std::atoi(env);
    if (steps >= 16) return steps;
  }
  return 2048;
}

}  // namespace

PulseShape PulseShape::rectangular(Complex peak_rabi, double duration,
                                   double delta0, double chirp) {
  PulseShape p;
  p.kind = EnvelopeKind::Rectangular;
  p.peak_rabi = peak_rabi;
  p.duration = duration;
  p.delta0 = delta0;
  p.chirp_rate = chirp;
  p.detuning_kind =
      chirp == 0.0 ? DetuningKind::Constant : DetuningKind::LinearChirp;
  p.grid_steps = default_grid_steps();
  p.validate();
  return p;
}

PulseShape PulseShape::sin_squared(Complex peak_rabi, double duration,
                                   double delta0, double chirp) {
  PulseShape p = rectangular(peak_rabi, duration, delta0, chirp);
  p.kind = EnvelopeKind::SinSquared;
  return p;
}

PulseShape PulseShape::gaussian(Complex peak_rabi, double duration,
                                double center, double width, double delta0,
                                double chirp) {
  PulseShape p = rectangular(peak_rabi, duration, delta0, chirp);
  p.kind = EnvelopeKind::Gaussian;
  p.gauss_center = center;
  p.gauss_width = width;
  p.validate();
  return p;
}

PulseShape PulseShape::sampled(Complex peak_rabi,
                               std::vector<double> envelope_samples,
                               double duration, double delta0) {
  PulseShape p = rectangular(peak_rabi, duration, delta0, 0.0);
  p.kind = EnvelopeKind::Sampled;
  p.envelope_samples = std::move(envelope_samples);
  p.validate();
  return p;
}

void PulseShape::validate() const {
  if (!(duration > 0.0)) throw std::domain_error("pulse duration must be > 0");
  if (kind == EnvelopeKind::Gaussian && !(gauss_width > 0.0))
    throw std::domain_error("gaussian width must be > 0");
  if (kind == EnvelopeKind::Sampled && envelope_samples.empty())
    throw std::domain_error("sampled envelope needs at least one grid value");
  if (detuning_kind == DetuningKind::Sampled && detuning_samples.empty())
    throw std::domain_error("sampled detuning needs at least one grid value");
  for (double v : envelope_samples)
    if (!std::isfinite(v))
      throw std::domain_error("envelope samples must be finite");
}

double PulseShape::envelope(double t) const {
  switch (kind) {
    case EnvelopeKind::Rectangular:
      return 1.0;
    case EnvelopeKind::SinSquared: {
      const double s = std::sin(std::numbers::pi * t / duration);
      return s * s;
    }
    case EnvelopeKind::Gaussian: {
      const double x = (t - gauss_center) / gauss_width;
      return std::exp(-0.5 * x * x);
    }
    case EnvelopeKind::Sampled:
      return interp_uniform(envelope_samples, t, duration);
  }
  return 0.0;
}

double PulseShape::detuning_at(double t) const {
  switch (detuning_kind) {
    case DetuningKind::Constant:
      return delta0;
    case DetuningKind::LinearChirp:
      return delta0 + chirp_rate * t;
    case DetuningKind::Sampled:
      return interp_uniform(detuning_samples, t, duration);
  }
  return 0.0;
}

std::pair<Complex, double> evaluate(const PulseShape& pulse, double t) {
  if (t < 0.0 || t > pulse.duration)
    throw std::domain_error("time outside the pulse interval [0, T]");
  return {pulse.peak_rabi * pulse.envelope(t), pulse.detuning_at(t)};
}

namespace {

// Composite Simpson on the pulse's grid (step count rounded up to even).
template <typename F>
double simpson(const PulseShape& pulse, F integrand) {
  int n = pulse.grid_steps;
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = pulse.duration / n;
  double sum = integrand(0.0) + integrand(pulse.duration);
  for (int i = 1; i < n; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  return sum * h / 3.0;
}

}  // namespace

double accumulated_detuning(const PulseShape& pulse) {
  pulse.validate();
  return simpson(pulse, [&](double t) { return pulse.detuning_at(t); });
}

double pulse_area(const PulseShape& pulse) {
  pulse.validate();
  const double mag = std::abs(pulse.peak_rabi);
  return simpson(pulse,
                 [&](double t) { return mag * std::abs(pulse.envelope(t)); });
}

}  // namespace pulsetrain
