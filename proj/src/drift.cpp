#include "wsncal/drift.hpp"

#include <algorithm>
#include <cmath>

#include "wsncal/errors.hpp"

namespace wsncal {

Interval sample_subrange(const Interval& parent, RandomStream& rng) {
  const double a = rng.uniform(parent.lo, parent.hi);
  const double b = rng.uniform(parent.lo, parent.hi);
  return {std::min(a, b), std::max(a, b)};
}

namespace {

CouplingRanges sample_coupling(const Interval& parent, RandomStream& rng) {
  CouplingRanges r;
  r.temperature = sample_subrange(parent, rng);
  r.humidity = sample_subrange(parent, rng);
  r.history = sample_subrange(parent, rng);
  return r;
}

}  // namespace

ChannelDrift sample_channel_drift(const DriftConfig& config, RandomStream& rng) {
  ChannelDrift d;
  d.f_alpha = rng.normal(config.f_alpha_mean, config.f_alpha_sd);
  d.f_beta = rng.normal(config.f_beta_mean, config.f_beta_sd);
  d.f_c = rng.normal(config.f_c_mean, config.f_c_sd);
  d.alpha = sample_coupling(kAlphaParent, rng);
  d.beta = sample_coupling(kBetaParent, rng);
  d.constant = sample_coupling(kConstantParent, rng);
  return d;
}

SensorDrift sample_drift_params(std::size_t length, const DriftConfig& config, RandomStream& rng) {
  if (length < 1) throw ContractError("sample_drift_params: length must be >= 1");
  const double T = static_cast<double>(length);
  SensorDrift s;
  s.ramp_rate = rng.uniform(1.0 / (2.0 * T), 2.0 / T);
  s.pm25 = sample_channel_drift(config, rng);
  s.pm10 = sample_channel_drift(config, rng);
  return s;
}

std::vector<double> scale_series(std::span<const double> values, const Interval& range) {
  if (values.empty()) throw ContractError("scale_series: values must be nonempty");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), range.midpoint());
    return out;
  }
  const double span = hi - lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = range.lo + (values[i] - lo) / span * (range.hi - range.lo);
  }
  return out;
}

double drifted_value(double y, double alpha, double beta, double c, double tau, double eps) {
  if (y < 0.0) throw ContractError("drifted_value: true reading must be nonnegative");
  const double gain = (1.0 - tau) + tau * alpha;
  const double exponent = (1.0 - tau) + tau * beta;
  return gain * std::pow(y, exponent) + tau * c + eps;
}

std::vector<double> reading_history(std::span<const double> y) {
  std::vector<double> h(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) h[i] = y[i == 0 ? 0 : i - 1];
  return h;
}

std::vector<DriftedReading> apply_drift(std::span<const double> y, const ChannelDrift& params,
                                        double ramp_rate, std::span<const double> temperature,
                                        std::span<const double> humidity,
                                        std::span<const double> history,
                                        std::size_t first_timestep, const DriftConfig& config,
                                        RandomStream& noise_rng) {
  const std::size_t n = y.size();
  if (temperature.size() != n || humidity.size() != n || history.size() != n)
    throw ContractError("apply_drift: input sequences must be aligned");
  if (n == 0) return {};

  std::vector<double> ones(config.weather_coupling ? 0 : n, 1.0);
  std::vector<double> zeros(config.weather_coupling ? 0 : n, 0.0);
  auto scaled = [&](std::span<const double> v, const Interval& r, const std::vector<double>& off) {
    return config.weather_coupling ? scale_series(v, r) : off;
  };

  const auto aT = scaled(temperature, params.alpha.temperature, ones);
  const auto aH = scaled(humidity, params.alpha.humidity, ones);
  const auto aD = scaled(history, params.alpha.history, ones);
  const auto bT = scaled(temperature, params.beta.temperature, ones);
  const auto bH = scaled(humidity, params.beta.humidity, ones);
  const auto bD = scaled(history, params.beta.history, ones);
  const auto cT = scaled(temperature, params.constant.temperature, zeros);
  const auto cH = scaled(humidity, params.constant.humidity, zeros);
  const auto cD = scaled(history, params.constant.history, zeros);

  std::vector<DriftedReading> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = out[i];
    r.alpha = params.f_alpha * aT[i] * aH[i] * aD[i];
    r.beta = params.f_beta * bT[i] * bH[i] * bD[i];
    r.c = params.f_c + cT[i] + cH[i] + cD[i];
    r.tau = config.fixed_tau ? *config.fixed_tau : temporal_factor(ramp_rate, first_timestep + i);
    const double eps = noise_rng.normal(0.0, config.noise_sd);
    r.x = drifted_value(y[i], r.alpha, r.beta, r.c, r.tau, eps);
    r.drift_target = r.x - y[i];
  }
  return out;
}

}  // namespace wsncal
