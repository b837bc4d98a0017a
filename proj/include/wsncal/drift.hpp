#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wsncal/random.hpp"

namespace wsncal {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(const Interval& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Parent intervals the per-sensor scaling ranges are drawn from.
inline constexpr Interval kAlphaParent{0.95, 1.05};
inline constexpr Interval kBetaParent{0.99, 1.01};
inline constexpr Interval kConstantParent{-0.2, 0.2};

// Target ranges for scaled temperature, humidity and history.
struct CouplingRanges {
  Interval temperature;
  Interval humidity;
  Interval history;
};

// Drift parameters of one pollutant channel of one sensor.
struct ChannelDrift {
  double f_alpha = 1.0;
  double f_beta = 1.0;
  double f_c = 0.0;
  CouplingRanges alpha;
  CouplingRanges beta;
  CouplingRanges constant;
};

struct SensorDrift {
  double ramp_rate = 0.0;  // per timestep, shared by both channels
  ChannelDrift pm25;
  ChannelDrift pm10;
};

struct DriftConfig {
  double f_alpha_mean = 1.0;
  double f_alpha_sd = 0.1;
  double f_beta_mean = 1.0;
  double f_beta_sd = 0.02;
  double f_c_mean = 0.0;
  double f_c_sd = 2.0;
  double noise_sd = 0.05;
  // When false, alpha/beta/c reduce to the independent factors.
  bool weather_coupling = true;
  // Overrides the linear ramp with a constant temporal factor.
  std::optional<double> fixed_tau;
};

// Two ordered uniform draws inside `parent`.
Interval sample_subrange(const Interval& parent, RandomStream& rng);

ChannelDrift sample_channel_drift(const DriftConfig& config, RandomStream& rng);

// Ramp rate ~ U[1/(2T), 2/T] for a run of `length` timesteps, then one
// independent ChannelDrift per pollutant.
SensorDrift sample_drift_params(std::size_t length, const DriftConfig& config, RandomStream& rng);

// Min-max affine map of `values` onto `range`; constant input maps to the
// midpoint of the range.
std::vector<double> scale_series(std::span<const double> values, const Interval& range);

inline double temporal_factor(double ramp_rate, std::size_t t) {
  const double tau = ramp_rate * static_cast<double>(t);
  return tau < 1.0 ? tau : 1.0;
}

// x = ((1 - tau) + tau alpha) * y^((1 - tau) + tau beta) + tau c + eps
double drifted_value(double y, double alpha, double beta, double c, double tau, double eps);

// Previous drift-free reading; the first entry repeats y[0].
std::vector<double> reading_history(std::span<const double> y);

struct DriftedReading {
  double x = 0.0;             // drifted sensor output
  double drift_target = 0.0;  // x - y
  double alpha = 1.0;
  double beta = 1.0;
  double c = 0.0;
  double tau = 0.0;
};

// Drifts one channel. All spans are aligned; element i belongs to timestep
// first_timestep + i, which drives the temporal ramp. Noise is drawn from
// `noise_rng` once per element.
std::vector<DriftedReading> apply_drift(std::span<const double> y, const ChannelDrift& params,
                                        double ramp_rate, std::span<const double> temperature,
                                        std::span<const double> humidity,
                                        std::span<const double> history,
                                        std::size_t first_timestep, const DriftConfig& config,
                                        RandomStream& noise_rng);

}  // namespace wsncal
