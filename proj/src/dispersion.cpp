#include "wsncal/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wsncal/errors.hpp"

namespace wsncal {

namespace {

constexpr double kPi = std::numbers::pi;

double source_angle_to(const Point& source, const Point& sensor) {
  return std::atan2(sensor.y - source.y, sensor.x - source.x);
}

}  // namespace

int offset(double d, double system_radius) {
  if (!(d >= 0.0)) throw ContractError("offset: distance must be >= 0");
  if (!(system_radius > 0.0)) throw ContractError("offset: system radius must be > 0");
  return static_cast<int>(std::floor(d / (system_radius * 2.0 / 5.0)));
}

double wind_alignment(double source_angle, double wind_angle) {
  double folded = std::fmod(source_angle - wind_angle, kPi);
  if (folded < 0.0) folded += kPi;
  if (folded >= kPi) folded = 0.0;
  return 2.0 * (1.0 - folded / kPi) - 1.0;
}

double wind_coefficient(std::span<const double> wind_speed, std::span<const double> source_angle,
                        std::span<const double> wind_angle, std::size_t t, int o) {
  if (o < 0) throw ContractError("wind_coefficient: offset must be >= 0");
  if (t < static_cast<std::size_t>(o))
    throw ContractError("wind_coefficient: t - o precedes the series start (warmup region)");
  if (t >= wind_speed.size() || t >= source_angle.size() || t >= wind_angle.size())
    throw ContractError("wind_coefficient: t beyond series length");

  const double speed = wind_speed[t];
  if (speed == 0.0) return 0.0;
  double sum = 0.0;
  for (int lag = 0; lag <= o; ++lag) {
    const std::size_t s = t - static_cast<std::size_t>(lag);
    sum += wind_alignment(source_angle[s], wind_angle[s]);
  }
  return speed / static_cast<double>(o + 1) * sum;
}

CoefficientResult measurement_coefficient_checked(double d, double w, double system_radius,
                                                  double denominator_floor) {
  if (!(d >= 0.0)) throw ContractError("measurement_coefficient: distance must be >= 0");
  if (!(system_radius > 0.0))
    throw ContractError("measurement_coefficient: system radius must be > 0");
  const double floor = denominator_floor > 0.0 ? denominator_floor : 1e-6 * system_radius;

  const double half = system_radius / 2.0;
  // (sqrt(2) w)^2 collapses to 2 w^2.
  double denominator = w > 0.0 ? half + half * (w + 1.0 + 2.0 * w * w) : half + half * (w + 1.0);
  CoefficientResult result;
  if (denominator < floor) {
    denominator = floor;
    result.clamped = true;
  }
  result.value = std::pow(10.0 * d / denominator + 1.0, -1.5);
  return result;
}

double measurement_coefficient(double d, double w, double system_radius,
                               double denominator_floor) {
  return measurement_coefficient_checked(d, w, system_radius, denominator_floor).value;
}

DispersionStats& DispersionStats::operator+=(const DispersionStats& other) {
  samples += other.samples;
  clamped += other.clamped;
  max_offset = std::max(max_offset, other.max_offset);
  return *this;
}

std::vector<double> wind_angles(const WeatherSeries& weather) {
  std::vector<double> out(weather.wind_direction.size());
  std::transform(weather.wind_direction.begin(), weather.wind_direction.end(), out.begin(),
                 [](double deg) { return deg * kPi / 180.0; });
  return out;
}

PollutantPair true_reading(const Scene& scene, const std::vector<SourceEmissions>& emissions,
                           const WeatherSeries& weather, SensorRef sensor, std::size_t t,
                           const DispersionParams& params, DispersionStats* stats) {
  if (t < kWarmup) throw ContractError("true_reading: t must be >= warmup");
  if (t >= weather.size()) throw ContractError("true_reading: t beyond series length");
  if (emissions.size() != scene.sources.size())
    throw ContractError("true_reading: one emission series per source required");

  const double R = scene.system_radius;
  const double floor = params.denominator_floor_factor * R;
  const Point here = position_at(scene, sensor, t);

  PollutantPair y;
  for (std::size_t c = 0; c < scene.sources.size(); ++c) {
    const Point& source = scene.sources[c];
    const int o = offset(distance(source, here), R);
    if (t < static_cast<std::size_t>(o))
      throw ContractError("true_reading: lag reaches before the series start");

    double sum = 0.0;
    for (int lag = 0; lag <= o; ++lag) {
      const std::size_t s = t - static_cast<std::size_t>(lag);
      sum += wind_alignment(source_angle_to(source, position_at(scene, sensor, s)),
                            weather.wind_direction[s] * kPi / 180.0);
    }
    const double w = weather.wind_speed[t] == 0.0
                         ? 0.0
                         : weather.wind_speed[t] / static_cast<double>(o + 1) * sum;
    const auto a = measurement_coefficient_checked(distance(source, here), w, R, floor);
    const std::size_t lagged = t - static_cast<std::size_t>(o);
    y.pm25 += a.value * emissions[c].pm25[lagged];
    y.pm10 += a.value * emissions[c].pm10[lagged];
    if (stats) {
      ++stats->samples;
      if (a.clamped) ++stats->clamped;
      stats->max_offset = std::max(stats->max_offset, o);
    }
  }
  return y;
}

TrueSeries compute_true_series(const Scene& scene, const std::vector<SourceEmissions>& emissions,
                               const WeatherSeries& weather, SensorRef sensor,
                               const DispersionParams& params, DispersionStats& stats) {
  const std::size_t length = weather.size();
  if (length <= kWarmup) throw ContractError("compute_true_series: series shorter than warmup");
  if (emissions.size() != scene.sources.size())
    throw ContractError("compute_true_series: one emission series per source required");

  const double R = scene.system_radius;
  const double floor = params.denominator_floor_factor * R;
  const auto wind_angle = wind_angles(weather);

  std::vector<Point> positions(length);
  for (std::size_t t = 0; t < length; ++t) positions[t] = position_at(scene, sensor, t);

  TrueSeries out;
  out.pm25.assign(length - kWarmup, 0.0);
  out.pm10.assign(length - kWarmup, 0.0);

  std::vector<double> angle(length);
  for (std::size_t c = 0; c < scene.sources.size(); ++c) {
    const Point& source = scene.sources[c];
    for (std::size_t t = 0; t < length; ++t) angle[t] = source_angle_to(source, positions[t]);

    for (std::size_t t = kWarmup; t < length; ++t) {
      const double d = distance(source, positions[t]);
      const int o = offset(d, R);
      if (t < static_cast<std::size_t>(o))
        throw ContractError("compute_true_series: lag reaches before the series start");
      const double w = wind_coefficient(weather.wind_speed, angle, wind_angle, t, o);
      const auto a = measurement_coefficient_checked(d, w, R, floor);
      const std::size_t lagged = t - static_cast<std::size_t>(o);
      out.pm25[t - kWarmup] += a.value * emissions[c].pm25[lagged];
      out.pm10[t - kWarmup] += a.value * emissions[c].pm10[lagged];

      ++stats.samples;
      if (a.clamped) ++stats.clamped;
      stats.max_offset = std::max(stats.max_offset, o);
    }
  }
  return out;
}

}  // namespace wsncal
