#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "wsncal/errors.hpp"
#include "wsncal/phenomenon.hpp"

using namespace wsncal;

namespace {

// Independent per-window maximum of a series.
std::vector<double> window_maxima(const std::vector<double>& v) {
  std::vector<double> out;
  for (std::size_t b = 0; b < v.size(); b += kMonthLength) {
    const auto e = std::min(v.size(), b + kMonthLength);
    out.push_back(*std::max_element(v.begin() + b, v.begin() + e));
  }
  return out;
}

}  // namespace

TEST(EmissionWalk, ReflectedStep) {
  EXPECT_DOUBLE_EQ(walk_step(0.0, -0.5), 0.5);
  EXPECT_DOUBLE_EQ(walk_step(2.0, 3.0), 5.0);
  EXPECT_DOUBLE_EQ(walk_step(0.25, -1.0), 0.75);
}

TEST(EmissionWalk, DeltaTruncation) {
  EXPECT_EQ(truncate_delta(-3.0), -1.0);
  EXPECT_EQ(truncate_delta(12.0), 10.0);
  EXPECT_EQ(truncate_delta(0.3), 0.3);
}

TEST(EmissionWalk, ConstantWindowIsFixedByPowerAndScale) {
  const std::vector<double> walk(kMonthLength, 1.0);
  const std::vector<double> target{47.5};
  std::vector<double> out(walk.size());
  explode_and_scale(walk, 7.0, target, out);
  for (double v : out) EXPECT_DOUBLE_EQ(v, 47.5);

  explode_and_scale(walk, 7.0, std::vector<double>{1.0}, out);
  for (double v : out) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(EmissionWalk, ExplodeRejectsWrongTargetCount) {
  const std::vector<double> walk(kMonthLength + 1, 1.0);
  std::vector<double> out(walk.size());
  EXPECT_THROW(explode_and_scale(walk, 7.0, std::vector<double>{1.0}, out), ContractError);
}

TEST(EmissionWalk, WindowMaximaEqualTargets) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream rng(seed);
    const auto w = sample_scaled_walk(kYearLength + 100, WalkParams{}, rng);
    ASSERT_EQ(w.window_targets.size(), 13u);
    const auto maxima = window_maxima(w.scaled);
    for (std::size_t i = 0; i < maxima.size(); ++i)
      EXPECT_NEAR(maxima[i], w.window_targets[i], 1e-9);
  }
}

TEST(EmissionWalk, DeltasWithinTruncationBounds) {
  RandomStream rng(99);
  const auto w = sample_scaled_walk(kYearLength, WalkParams{}, rng);
  ASSERT_EQ(w.deltas.size(), kYearLength - 1);
  EXPECT_EQ(w.walk[0], kWalkInitial);
  for (std::size_t t = 0; t < w.deltas.size(); ++t) {
    EXPECT_GE(w.deltas[t], -1.0);
    EXPECT_LE(w.deltas[t], 10.0);
    EXPECT_DOUBLE_EQ(w.walk[t + 1], std::abs(w.walk[t] + w.deltas[t]));
  }
}

TEST(EmissionWalk, PowerThenScalePreservesWindowArgmax) {
  RandomStream rng(4);
  const auto w = sample_scaled_walk(3 * kMonthLength, WalkParams{}, rng);
  for (std::size_t b = 0; b < w.walk.size(); b += kMonthLength) {
    const auto e = b + kMonthLength;
    const auto raw = std::max_element(w.walk.begin() + b, w.walk.begin() + e) - w.walk.begin();
    const auto scaled =
        std::max_element(w.scaled.begin() + b, w.scaled.begin() + e) - w.scaled.begin();
    EXPECT_EQ(raw, scaled);
  }
}

TEST(Emission, NonnegativeAndSineBounded) {
  EmissionParams params;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed);
    const auto trace = sample_emission_series(kYearLength, params, rng);
    ASSERT_EQ(trace.sines.size(), 3u);
    const double amplitude_sum = 3 * params.sine_amplitude;
    for (std::size_t t = 0; t < trace.values.size(); ++t) {
      EXPECT_GE(trace.values[t], 0.0);
      EXPECT_LE(std::abs(trace.values[t] - trace.walk.scaled[t]), amplitude_sum + 1e-12);
    }
  }
}

TEST(Emission, SingleWindowForOneMonth) {
  RandomStream rng(1);
  const auto trace = sample_emission_series(kMonthLength, EmissionParams{}, rng);
  EXPECT_EQ(trace.walk.window_targets.size(), 1u);
}

TEST(Emission, DeterministicPerStream) {
  const auto a = generate_emissions(3, 1000, EmissionParams{}, 5);
  const auto b = generate_emissions(3, 1000, EmissionParams{}, 5);
  const auto c = generate_emissions(4, 1000, EmissionParams{}, 5);
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(a[s].pm25, b[s].pm25);
    EXPECT_EQ(a[s].pm10, c[s].pm10);
    EXPECT_NE(a[s].pm25, a[s].pm10);
  }
}

TEST(Weather, DirectionWrap) {
  EXPECT_DOUBLE_EQ(wrap_degrees(350.0 + 20.0), 10.0);
  EXPECT_DOUBLE_EQ(wrap_degrees(10.0 - 20.0), 350.0);
  EXPECT_DOUBLE_EQ(wrap_degrees(360.0), 0.0);
  EXPECT_LT(wrap_degrees(-1e-18), 360.0);
}

TEST(Weather, MeanReversionFixedPoint) {
  EXPECT_EQ(mean_reverting_step(10.0, 10.0, 0.0), 10.0);
  EXPECT_EQ(mean_reverting_step(80.0, 80.0, 0.0), 80.0);
  EXPECT_DOUBLE_EQ(mean_reverting_step(20.0, 10.0, 0.0), 19.9);
}

TEST(Weather, SeriesInvariants) {
  RandomStream rng(8);
  const auto trace = sample_weather_trace(kYearLength, WeatherParams{}, rng);
  const auto& w = trace.series;
  ASSERT_EQ(w.size(), kYearLength);
  EXPECT_EQ(w.humidity.size(), kYearLength);
  EXPECT_EQ(w.wind_speed.size(), kYearLength);
  EXPECT_EQ(w.wind_direction.size(), kYearLength);
  for (std::size_t t = 0; t < w.size(); ++t) {
    EXPECT_GE(w.wind_direction[t], 0.0);
    EXPECT_LT(w.wind_direction[t], 360.0);
    EXPECT_GE(w.wind_speed[t], 0.0);
    if (t > 0) {
      double step = std::abs(w.wind_direction[t] - w.wind_direction[t - 1]);
      step = std::min(step, 360.0 - step);
      EXPECT_LE(step, 60.0 + 1e-9);
    }
  }
  const auto maxima = window_maxima(w.wind_speed);
  ASSERT_EQ(maxima.size(), trace.wind_window_targets.size());
  for (std::size_t i = 0; i < maxima.size(); ++i) {
    EXPECT_NEAR(maxima[i], trace.wind_window_targets[i], 1e-9);
    EXPECT_GE(trace.wind_window_targets[i], 0.5);
  }

  const double mean_t = std::accumulate(w.temperature.begin(), w.temperature.end(), 0.0) / w.size();
  const double mean_h = std::accumulate(w.humidity.begin(), w.humidity.end(), 0.0) / w.size();
  EXPECT_NEAR(mean_t, 10.0, 5.0);
  EXPECT_NEAR(mean_h, 80.0, 5.0);
}
