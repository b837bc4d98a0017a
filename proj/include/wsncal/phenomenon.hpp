#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsncal/random.hpp"

namespace wsncal {

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kWeekLength = 7 * kHoursPerDay;
// Scaling windows and "months" are both 30 days of hourly steps.
inline constexpr std::size_t kMonthLength = 30 * kHoursPerDay;
inline constexpr std::size_t kYearLength = 12 * kMonthLength;

inline constexpr double kDeltaMin = -1.0;
inline constexpr double kDeltaMax = 10.0;
inline constexpr double kWalkReversion = 0.01;
inline constexpr double kWalkInitial = 1.0;

// Realized walk increment: the Gaussian draw clipped to [kDeltaMin, kDeltaMax].
double truncate_delta(double raw);

// One step of the reflected walk, |x + delta|.
inline double walk_step(double current, double delta) {
  const double next = current + delta;
  return next < 0.0 ? -next : next;
}

// Raises each value to `exponent`, then rescales every window of
// kMonthLength samples so that its maximum equals the window's target.
// `window_targets` holds one entry per (possibly partial) window.
void explode_and_scale(std::span<const double> walk, double exponent,
                       std::span<const double> window_targets, std::span<double> out);

std::size_t window_count(std::size_t length);

struct WalkParams {
  double exponent = 7.0;
  double target_mean = 50.0;
  double target_sd = 9.0;
  // Window targets are floored here so that the maximum stays nonnegative.
  double target_floor = 0.0;
};

struct ScaledWalk {
  std::vector<double> walk;            // reflected random walk, starts at kWalkInitial
  std::vector<double> deltas;          // realized increments, length T-1
  std::vector<double> window_targets;  // drawn per-window maxima
  std::vector<double> scaled;          // after power and window scaling
};

ScaledWalk sample_scaled_walk(std::size_t length, const WalkParams& params, RandomStream& rng);

struct SineComponent {
  double period = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct EmissionParams {
  WalkParams walk;
  double sine_amplitude = 2.5;
  std::array<double, 3> sine_periods{static_cast<double>(kWeekLength),
                                     static_cast<double>(kMonthLength),
                                     static_cast<double>(kYearLength)};
};

struct EmissionTrace {
  ScaledWalk walk;
  std::vector<SineComponent> sines;
  std::vector<double> values;  // final nonnegative concentrations
};

EmissionTrace sample_emission_series(std::size_t length, const EmissionParams& params,
                                     RandomStream& rng);

struct SourceEmissions {
  std::vector<double> pm25;
  std::vector<double> pm10;
};

// Two independent series per source, each from its own named sub-stream.
std::vector<SourceEmissions> generate_emissions(std::size_t n_sources, std::size_t length,
                                                const EmissionParams& params,
                                                std::uint64_t master_seed);

struct WeatherParams {
  double temperature_center = 10.0;
  double humidity_center = 80.0;
  double step_sd = 1.0;
  WalkParams wind{2.0, 8.0, 2.0, 0.5};
  double direction_step = 60.0;
};

struct WeatherSeries {
  std::vector<double> temperature;
  std::vector<double> humidity;
  std::vector<double> wind_speed;
  std::vector<double> wind_direction;  // degrees in [0, 360)

  std::size_t size() const { return temperature.size(); }
};

double mean_reverting_step(double value, double center, double noise);
double wrap_degrees(double degrees);

struct WeatherTrace {
  WeatherSeries series;
  std::vector<double> wind_window_targets;
};

WeatherTrace sample_weather_trace(std::size_t length, const WeatherParams& params,
                                  RandomStream& rng);
WeatherSeries sample_weather(std::size_t length, const WeatherParams& params, RandomStream& rng);

}  // namespace wsncal
