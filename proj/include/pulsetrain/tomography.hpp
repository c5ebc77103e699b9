#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pulsetrain {

class NonIdentifiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { TwoState, Majorana, Multipod };

/// A nominal gate of angle target_theta on one of the catalog systems; the
/// measured observable is the population listed below, computed from the
/// exact N-pass propagator at theta = target_theta + epsilon.
///   two-state:   p = |U_21|^2 = sin^2(N theta)
///   majorana-M:  p = |U_M1|^2 = sin^(2(M-1))(N theta)
///   multipod-L:  excited population from ground state 1 (equal couplings)
struct AmplificationModel {
  SystemKind kind = SystemKind::TwoState;
  int size = 2;  // M for majorana, L for multipod; ignored for two-state
  double target_theta;
};

struct MeasurementSeries {
  std::vector<int> n_values;
  std::vector<double> populations;
  std::optional<long> shots;  // set when populations carry binomial noise
};

/// Exact model population at pulse-train length n.
double model_population(const AmplificationModel& model, double theta, int n);

/// Populations at theta = target_theta + epsilon over the given train
/// lengths; with shots set, each is replaced by a seeded binomial draw.
MeasurementSeries amplified_series(const AmplificationModel& model,
                                   double epsilon,
                                   const std::vector<int>& n_values,
                                   std::optional<long> shots, std::uint64_t seed);

/// Least-squares estimate of epsilon from a measured series: coarse grid
/// over [-0.3, 0.3] (601 points) followed by golden-section refinement.
/// Returns (epsilon_hat, final sum of squared residuals).
std::pair<double, double> estimate_error(const AmplificationModel& model,
                                         const MeasurementSeries& series);

}  // namespace pulsetrain
