#include "wsncal/phenomenon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wsncal/errors.hpp"

namespace wsncal {

double truncate_delta(double raw) { return std::clamp(raw, kDeltaMin, kDeltaMax); }

std::size_t window_count(std::size_t length) {
  return (length + kMonthLength - 1) / kMonthLength;
}

void explode_and_scale(std::span<const double> walk, double exponent,
                       std::span<const double> window_targets, std::span<double> out) {
  if (out.size() != walk.size()) throw ContractError("explode_and_scale: output size mismatch");
  if (window_targets.size() != window_count(walk.size()))
    throw ContractError("explode_and_scale: one target per window required");

  for (std::size_t w = 0; w < window_targets.size(); ++w) {
    const std::size_t begin = w * kMonthLength;
    const std::size_t end = std::min(walk.size(), begin + kMonthLength);
    double peak = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
      out[t] = std::pow(walk[t], exponent);
      peak = std::max(peak, out[t]);
    }
    // An all-zero window stays zero.
    const double factor = peak > 0.0 ? window_targets[w] / peak : 0.0;
    for (std::size_t t = begin; t < end; ++t) out[t] *= factor;
  }
}

ScaledWalk sample_scaled_walk(std::size_t length, const WalkParams& params, RandomStream& rng) {
  if (length < 1) throw ContractError("series length must be >= 1");
  ScaledWalk result;
  result.walk.resize(length);
  result.deltas.reserve(length - 1);
  result.walk[0] = kWalkInitial;
  for (std::size_t t = 0; t + 1 < length; ++t) {
    const double current = result.walk[t];
    const double delta = truncate_delta(rng.normal(-kWalkReversion * current, 1.0));
    result.deltas.push_back(delta);
    result.walk[t + 1] = walk_step(current, delta);
  }

  const std::size_t windows = window_count(length);
  result.window_targets.reserve(windows);
  for (std::size_t w = 0; w < windows; ++w) {
    result.window_targets.push_back(
        std::max(params.target_floor, rng.normal(params.target_mean, params.target_sd)));
  }

  result.scaled.resize(length);
  explode_and_scale(result.walk, params.exponent, result.window_targets, result.scaled);
  return result;
}

EmissionTrace sample_emission_series(std::size_t length, const EmissionParams& params,
                                     RandomStream& rng) {
  EmissionTrace trace;
  trace.walk = sample_scaled_walk(length, params.walk, rng);
  for (double period : params.sine_periods) {
    trace.sines.push_back(
        {period, params.sine_amplitude, rng.uniform(0.0, 2.0 * std::numbers::pi)});
  }

  trace.values.resize(length);
  for (std::size_t t = 0; t < length; ++t) {
    double v = trace.walk.scaled[t];
    for (const auto& s : trace.sines) {
      v += s.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / s.period +
                                  s.phase);
    }
    trace.values[t] = std::max(0.0, v);
  }
  return trace;
}

std::vector<SourceEmissions> generate_emissions(std::size_t n_sources, std::size_t length,
                                                const EmissionParams& params,
                                                std::uint64_t master_seed) {
  std::vector<SourceEmissions> out(n_sources);
  for (std::size_t c = 0; c < n_sources; ++c) {
    const std::string prefix = "phenomenon/source-" + std::to_string(c);
    RandomStream pm25_rng(master_seed, prefix + "/pm25");
    RandomStream pm10_rng(master_seed, prefix + "/pm10");
    out[c].pm25 = sample_emission_series(length, params, pm25_rng).values;
    out[c].pm10 = sample_emission_series(length, params, pm10_rng).values;
  }
  return out;
}

double mean_reverting_step(double value, double center, double noise) {
  return value - kWalkReversion * (value - center) + noise;
}

double wrap_degrees(double degrees) {
  double wrapped = std::fmod(degrees, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  return wrapped >= 360.0 ? 0.0 : wrapped;
}

WeatherTrace sample_weather_trace(std::size_t length, const WeatherParams& params,
                                  RandomStream& rng) {
  if (length < 1) throw ContractError("series length must be >= 1");
  WeatherTrace trace;
  auto& w = trace.series;
  w.temperature.resize(length);
  w.humidity.resize(length);
  w.wind_direction.resize(length);

  w.temperature[0] = params.temperature_center;
  w.humidity[0] = params.humidity_center;
  w.wind_direction[0] = rng.uniform(0.0, 360.0);
  for (std::size_t t = 0; t + 1 < length; ++t) {
    w.temperature[t + 1] = mean_reverting_step(w.temperature[t], params.temperature_center,
                                               rng.normal(0.0, params.step_sd));
    w.humidity[t + 1] = mean_reverting_step(w.humidity[t], params.humidity_center,
                                            rng.normal(0.0, params.step_sd));
    w.wind_direction[t + 1] = wrap_degrees(
        w.wind_direction[t] + rng.uniform(-params.direction_step, params.direction_step));
  }

  auto wind = sample_scaled_walk(length, params.wind, rng);
  w.wind_speed = std::move(wind.scaled);
  trace.wind_window_targets = std::move(wind.window_targets);
  return trace;
}

WeatherSeries sample_weather(std::size_t length, const WeatherParams& params, RandomStream& rng) {
  return sample_weather_trace(length, params, rng).series;
}

}  // namespace wsncal
