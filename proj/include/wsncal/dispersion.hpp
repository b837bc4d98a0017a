#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsncal/phenomenon.hpp"
#include "wsncal/scene.hpp"

namespace wsncal {

// Largest lag any sensor inside the system disk can see (floor(2R / 0.4R)).
// The first kWarmup timesteps have no complete emission history and are
// never exported.
inline constexpr std::size_t kWarmup = 5;

// Timestep lag with which a source at distance `d` is observed: floor(d / (2R/5)).
int offset(double d, double system_radius);

// One lag term of the wind coefficient: +1 for wind blowing along the
// source->sensor direction, 0 for cross wind. The angle difference is folded
// with a nonnegative modulo pi, so a pure head wind also scores +1.
double wind_alignment(double source_angle, double wind_angle);

// Mean alignment over lags 0..o scaled by the current wind speed. Angles in
// radians, all series indexed by timestep; requires t >= o.
double wind_coefficient(std::span<const double> wind_speed, std::span<const double> source_angle,
                        std::span<const double> wind_angle, std::size_t t, int o);

struct CoefficientResult {
  double value = 0.0;
  bool clamped = false;  // the inner denominator hit the floor
};

// Distance/wind attenuation of a single source at a sensor, in (0, 1].
// `denominator_floor` bounds the inner denominator from below (w <= -2 makes
// it nonpositive); defaults to 1e-6 * R when nonpositive.
CoefficientResult measurement_coefficient_checked(double d, double w, double system_radius,
                                                  double denominator_floor = 0.0);
double measurement_coefficient(double d, double w, double system_radius,
                               double denominator_floor = 0.0);

struct PollutantPair {
  double pm25 = 0.0;
  double pm10 = 0.0;
};

struct DispersionParams {
  // Relative to R; the absolute floor is denominator_floor_factor * R.
  double denominator_floor_factor = 1e-6;
};

struct DispersionStats {
  std::uint64_t samples = 0;
  std::uint64_t clamped = 0;
  int max_offset = 0;

  DispersionStats& operator+=(const DispersionStats& other);
};

// Wind direction series converted to radians.
std::vector<double> wind_angles(const WeatherSeries& weather);

// Drift-free reading of one sensor at one timestep, summed over all sources
// in source order. Requires t >= kWarmup.
PollutantPair true_reading(const Scene& scene, const std::vector<SourceEmissions>& emissions,
                           const WeatherSeries& weather, SensorRef sensor, std::size_t t,
                           const DispersionParams& params = {},
                           DispersionStats* stats = nullptr);

// True readings for timesteps [kWarmup, T). Index i corresponds to timestep
// kWarmup + i.
struct TrueSeries {
  std::vector<double> pm25;
  std::vector<double> pm10;
};

TrueSeries compute_true_series(const Scene& scene, const std::vector<SourceEmissions>& emissions,
                               const WeatherSeries& weather, SensorRef sensor,
                               const DispersionParams& params, DispersionStats& stats);

}  // namespace wsncal
