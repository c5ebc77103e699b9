#include "pulsetrain/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pulsetrain/majorana.hpp"
#include "pulsetrain/morris_shore.hpp"

namespace pulsetrain {

namespace {

constexpr double kGridHalfWidth = 0.3;
constexpr int kGridPoints = 601;

CKPair real_angle_pair(double theta) {
  return CKPair(std::cos(theta), Complex{0.0, -std::sin(theta)});
}

double series_sse(const AmplificationModel& model,
                  const MeasurementSeries& series, double epsilon) {
  double sse = 0.0;
  for (std::size_t i = 0; i < series.n_values.size(); ++i) {
    const double p = model_population(model, model.target_theta + epsilon,
                                      series.n_values[i]);
    const double r = p - series.populations[i];
    sse += r * r;
  }
  return sse;
}

}  // namespace

double model_population(const AmplificationModel& model, double theta, int n) {
  switch (model.kind) {
    case SystemKind::TwoState: {
      const CKPair ck = su2_power(real_angle_pair(theta), n);
      return std::norm(ck.b());
    }
    case SystemKind::Majorana: {
      const MajoranaPropagator u =
          npass_propagator(real_angle_pair(theta), model.size, n);
      return std::norm(u.matrix(model.size - 1, 0));
    }
    case SystemKind::Multipod: {
      // Equal couplings, resonant (delta = 0); excited population starting
      // from ground state 1.
      const std::vector<Complex> omegas(model.size, Complex{1.0, 0.0});
      const Eigen::MatrixXcd u =
          multipod_npass(omegas, real_angle_pair(theta), 0.0, n);
      return std::norm(u(model.size, 0));
    }
  }
  return 0.0;
}

MeasurementSeries amplified_series(const AmplificationModel& model,
                                   double epsilon,
                                   const std::vector<int>& n_values,
                                   std::optional<long> shots,
                                   std::uint64_t seed) {
  if (n_values.empty())
    throw std::domain_error("amplified series needs at least one N value");
  if (std::abs(epsilon) >= kGridHalfWidth)
    throw std::domain_error("|epsilon| must stay below 0.3");
  MeasurementSeries series;
  series.n_values = n_values;
  series.shots = shots;
  std::mt19937_64 rng(seed);
  for (int n : n_values) {
    double p = model_population(model, model.target_theta + epsilon, n);
    if (shots) {
      std::binomial_distribution<long> draw(*shots, p);
      p = static_cast<double>(draw(rng)) / static_cast<double>(*shots);
    }
    series.populations.push_back(p);
  }
  return series;
}

std::pair<double, double> estimate_error(const AmplificationModel& model,
                                         const MeasurementSeries& series) {
  if (series.n_values.size() != series.populations.size())
    throw std::domain_error("series lists must have equal length");
  if (series.n_values.empty())
    throw std::domain_error("series is empty");

  // Coarse grid scan.
  const double step = 2.0 * kGridHalfWidth / (kGridPoints - 1);
  double best_eps = kGridHalfWidth;
  double best_sse = series_sse(model, series, best_eps);
  double worst_sse = best_sse;
  for (int i = 1; i < kGridPoints; ++i) {
    const double eps = kGridHalfWidth - i * step;
    const double sse = series_sse(model, series, eps);
    if (sse < best_sse) {
      best_sse = sse;
      best_eps = eps;
    }
    if (sse > worst_sse) worst_sse = sse;
  }
  if (worst_sse - best_sse < 1e-14)
    throw NonIdentifiableError(
        "populations are insensitive to epsilon over the search grid");

  // Golden-section refinement in the bracket around a grid point.
  const auto refine = [&](double center) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = center - step;
    double hi = center + step;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = series_sse(model, series, x1);
    double f2 = series_sse(model, series, x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = series_sse(model, series, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = series_sse(model, series, x2);
      }
    }
    const double eps_hat = 0.5 * (lo + hi);
    return std::pair{eps_hat, series_sse(model, series, eps_hat)};
  };

  // The objective can be exactly even in epsilon (a nominal angle at a
  // multiple of pi/2), leaving the sign unidentifiable. Refine around the
  // best grid point and its mirror, and report the nonnegative solution
  // when both are equally good.
  auto primary = refine(best_eps);
  auto mirrored = refine(-best_eps);
  const double tie_tol =
      1e-9 * std::max({primary.second, mirrored.second, 1e-20});
  if (mirrored.second < primary.second - tie_tol) return mirrored;
  if (primary.second < mirrored.second - tie_tol) return primary;
  return primary.first >= mirrored.first ? primary : mirrored;
}

}  // namespace pulsetrain
