#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pulsetrain/tomography.hpp"

using namespace pulsetrain;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("two-state model population is sin^2(N theta)") {
  const AmplificationModel model{SystemKind::TwoState, 2, 0.0};
  for (double theta : {0.2, 0.9, 2.4}) {
    for (int n : {1, 3, 10}) {
      const double s = std::sin(n * theta);
      CHECK(model_population(model, theta, n) ==
            doctest::Approx(s * s).epsilon(1e-12));
    }
  }
}

TEST_CASE("majorana model population is sin^(2(M-1))(N theta)") {
  for (int m : {3, 5}) {
    const AmplificationModel model{SystemKind::Majorana, m, 0.0};
    const double theta = 0.7;
    for (int n : {1, 4}) {
      const double p = std::pow(std::sin(n * theta), 2.0 * (m - 1));
      CHECK(model_population(model, theta, n) ==
            doctest::Approx(p).epsilon(1e-11));
    }
  }
}

TEST_CASE("multipod model population is sin^2(N theta) / L") {
  for (int l : {2, 4}) {
    const AmplificationModel model{SystemKind::Multipod, l, 0.0};
    const double theta = 0.55;
    for (int n : {1, 6}) {
      const double s = std::sin(n * theta);
      CHECK(model_population(model, theta, n) ==
            doctest::Approx(s * s / l).epsilon(1e-11));
    }
  }
}

TEST_CASE("noiseless series carries the exact populations") {
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 4};
  const auto series =
      amplified_series(model, 0.013, {1, 5, 9}, std::nullopt, 0);
  CHECK_FALSE(series.shots.has_value());
  REQUIRE(series.populations.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(series.populations[i] ==
          doctest::Approx(model_population(model, kPi / 4 + 0.013,
                                           series.n_values[i]))
              .epsilon(1e-14));
}

TEST_CASE("shot noise is seeded and bounded") {
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 4};
  const auto s1 = amplified_series(model, 0.02, {1, 3, 7}, 100000L, 42);
  const auto s2 = amplified_series(model, 0.02, {1, 3, 7}, 100000L, 42);
  const auto s3 = amplified_series(model, 0.02, {1, 3, 7}, 100000L, 43);
  CHECK(s1.populations == s2.populations);
  CHECK(s1.populations != s3.populations);
  CHECK(s1.shots == 100000L);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s1.populations[i] >= 0.0);
    CHECK(s1.populations[i] <= 1.0);
    const double exact =
        model_population(model, kPi / 4 + 0.02, s1.n_values[i]);
    CHECK(std::abs(s1.populations[i] - exact) < 0.02);
  }
}

TEST_CASE("series construction rejects bad inputs") {
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 4};
  CHECK_THROWS_AS(amplified_series(model, 0.35, {1}, std::nullopt, 0),
                  std::domain_error);
  CHECK_THROWS_AS(amplified_series(model, 0.01, {}, std::nullopt, 0),
                  std::domain_error);
}

TEST_CASE("noiseless round trip recovers the error") {
  const std::vector<int> n_values{1, 2, 3, 5, 9};
  for (double eps : {-0.08, -0.005, 0.0, 0.003, 0.11}) {
    const AmplificationModel model{SystemKind::TwoState, 2, kPi / 4};
    const auto series = amplified_series(model, eps, n_values, std::nullopt, 0);
    const auto [eps_hat, sse] = estimate_error(model, series);
    CHECK(std::abs(eps_hat - eps) < 1e-8);
    CHECK(sse < 1e-14);
  }
}

TEST_CASE("round trip on the higher-order systems") {
  const std::vector<int> n_values{1, 2, 3, 5, 9};
  const AmplificationModel maj{SystemKind::Majorana, 4, kPi / 4};
  const auto s_maj = amplified_series(maj, 0.02, n_values, std::nullopt, 0);
  CHECK(std::abs(estimate_error(maj, s_maj).first - 0.02) < 1e-8);

  const AmplificationModel pod{SystemKind::Multipod, 3, kPi / 4};
  const auto s_pod = amplified_series(pod, -0.04, n_values, std::nullopt, 0);
  CHECK(std::abs(estimate_error(pod, s_pod).first + 0.04) < 1e-8);
}

TEST_CASE("symmetric target angle resolves only the magnitude") {
  // at target pi/2 the populations are even in epsilon; the estimator
  // reports the nonnegative branch
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 2};
  for (double eps : {0.03, -0.03}) {
    const auto series =
        amplified_series(model, eps, {1, 3, 5, 9}, std::nullopt, 0);
    const auto [eps_hat, sse] = estimate_error(model, series);
    CHECK(eps_hat == doctest::Approx(std::abs(eps)).epsilon(1e-6));
    CHECK(sse < 1e-12);
  }
}

TEST_CASE("amplification sharpens the estimate under shot noise") {
  // with the same shot budget, longer trains pin epsilon tighter
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 2};
  const double eps = 0.004;
  double err_short_total = 0.0, err_long_total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto short_series =
        amplified_series(model, eps, {1}, 200000L, seed);
    const auto long_series =
        amplified_series(model, eps, {1, 3, 5, 7, 9}, 200000L, seed);
    err_short_total +=
        std::abs(estimate_error(model, short_series).first - eps);
    err_long_total +=
        std::abs(estimate_error(model, long_series).first - eps);
  }
  CHECK(err_long_total < err_short_total);
}

TEST_CASE("estimate_error validates its series") {
  const AmplificationModel model{SystemKind::TwoState, 2, kPi / 4};
  MeasurementSeries bad;
  bad.n_values = {1, 2};
  bad.populations = {0.1};
  CHECK_THROWS_AS(estimate_error(model, bad), std::domain_error);
  MeasurementSeries empty;
  CHECK_THROWS_AS(estimate_error(model, empty), std::domain_error);
}
