#include "wsncal/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string_view>

#include "wsncal/csv.hpp"
#include "wsncal/errors.hpp"
#include "wsncal/random.hpp"

namespace wsncal {

double mse(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) throw ContractError("mse: length mismatch");
  if (predicted.empty()) throw ContractError("mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - truth[i];
    sum += e * e;
  }
  return sum / static_cast<double>(predicted.size());
}

double LinearModel::calibrate(double drifted) const {
  if (degenerate) return truth_mean;
  return (drifted - intercept) / slope;
}

LinearModel fit_linear(std::span<const double> truth, std::span<const double> drifted) {
  if (truth.size() != drifted.size()) throw ContractError("fit_linear: length mismatch");
  if (truth.size() < 2) throw ContractError("fit_linear: at least 2 points required");
  const double n = static_cast<double>(truth.size());
  const double mean_y = std::accumulate(truth.begin(), truth.end(), 0.0) / n;
  const double mean_x = std::accumulate(drifted.begin(), drifted.end(), 0.0) / n;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double dy = truth[i] - mean_y;
    sxy += dy * (drifted[i] - mean_x);
    syy += dy * dy;
  }

  LinearModel m;
  m.truth_mean = mean_y;
  // A slope this close to zero cannot be inverted meaningfully either.
  const double slope = syy > 0.0 ? sxy / syy : 0.0;
  if (syy <= 0.0 || std::abs(slope) < 1e-12) {
    m.slope = 0.0;
    m.intercept = mean_x;
    m.degenerate = true;
    return m;
  }
  m.slope = slope;
  m.intercept = mean_x - slope * mean_y;
  return m;
}

OracleModel fit_oracle(const Dataset& dataset, const ExperimentSplit& split) {
  const std::size_t n = dataset.sensor_count();
  const std::size_t first = dataset.first_timestep();
  OracleModel model;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> y25, y10, x25, x10;
    for (const auto& part : split.train) {
      const auto& real = dataset.realization(part.realization);
      for (std::size_t t = part.range.begin; t < part.range.end; ++t) {
        const std::size_t i = t - first;
        y25.push_back(dataset.truth[k].pm25[i]);
        y10.push_back(dataset.truth[k].pm10[i]);
        x25.push_back(real.drifted[k].pm25[i]);
        x10.push_back(real.drifted[k].pm10[i]);
      }
    }
    model.pm25.push_back(fit_linear(y25, x25));
    model.pm10.push_back(fit_linear(y10, x10));
  }
  return model;
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  const auto table = csv::Table::read(path);
  PredictionSet out;
  for (const auto& c : table.comments()) {
    std::string_view v(c);
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    constexpr std::string_view kKey = "scaler_hash=";
    if (v.substr(0, kKey.size()) == kKey) out.scaler_hash = std::string(v.substr(kKey.size()));
  }
  const auto ct = table.column("timestamp");
  const auto cs = table.column("sensor_id");
  const auto c25 = table.column("pm25");
  const auto c10 = table.column("pm10");
  out.rows.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out.rows.push_back({table.index(r, ct), table.index(r, cs), table.number(r, c25),
                        table.number(r, c10)});
  }
  return out;
}

void write_predictions(const std::filesystem::path& path, const PredictionSet& predictions) {
  csv::Writer w(path);
  if (predictions.scaler_hash) {
    w.field(std::string_view("# scaler_hash=" + *predictions.scaler_hash));
    w.end_row();
  }
  w.header({"timestamp", "sensor_id", "pm25", "pm10"});
  for (const auto& p : predictions.rows) {
    w.field(p.timestamp).field(p.sensor_id).field(p.pm25).field(p.pm10);
    w.end_row();
  }
  w.close();
}

namespace {

template <typename Calibrate>
PredictionSet test_predictions(const Dataset& dataset, const ExperimentSplit& split,
                               Calibrate&& calibrate) {
  const Scaler scaler = fit_scaler(dataset, split);
  PredictionSet out;
  out.scaler_hash = scaler.hash();
  const std::size_t first = dataset.first_timestep();
  for (const auto& part : split.test) {
    const auto& real = dataset.realization(part.realization);
    for (std::size_t t = part.range.begin; t < part.range.end; ++t) {
      for (std::size_t k = 0; k < dataset.sensor_count(); ++k) {
        const std::size_t i = t - first;
        const auto [c25, c10] = calibrate(k, real.drifted[k].pm25[i], real.drifted[k].pm10[i]);
        out.rows.push_back({t, k, scaler.pm25(c25), scaler.pm10(c10)});
      }
    }
  }
  return out;
}

std::vector<ScatterPoint> subsample(std::vector<ScatterPoint> points, std::size_t limit,
                                    std::uint64_t seed, std::string_view stream) {
  if (points.size() <= limit) return points;
  RandomStream rng(seed, stream);
  std::vector<ScatterPoint> picked;
  picked.reserve(limit);
  std::sample(points.begin(), points.end(), std::back_inserter(picked), limit, rng.engine());
  return picked;
}

}  // namespace

PredictionSet oracle_predictions(const Dataset& dataset, const ExperimentSplit& split,
                                 const OracleModel& model) {
  return test_predictions(dataset, split, [&](std::size_t k, double x25, double x10) {
    return std::pair{model.pm25[k].calibrate(x25), model.pm10[k].calibrate(x10)};
  });
}

PredictionSet identity_predictions(const Dataset& dataset, const ExperimentSplit& split) {
  return test_predictions(dataset, split, [](std::size_t, double x25, double x10) {
    return std::pair{x25, x10};
  });
}

CalibrationResult evaluate(const PredictionSet& predictions, const Dataset& dataset,
                           const ExperimentSplit& split, const EvaluateOptions& options) {
  if (split.test.size() != 1)
    throw ContractError("evaluate: test set must come from a single realization");
  const SplitPart& test = split.test.front();
  const Scaler scaler = fit_scaler(dataset, split);
  if (predictions.scaler_hash && *predictions.scaler_hash != scaler.hash())
    throw DataError("predictions were normalized with scaler " + *predictions.scaler_hash +
                    ", the " + std::string(to_string(split.experiment)) + " split uses " +
                    scaler.hash());

  const std::size_t n = dataset.sensor_count();
  const std::size_t steps = test.range.size();
  std::vector<const Prediction*> grid(steps * n, nullptr);
  for (const auto& p : predictions.rows) {
    if (p.sensor_id >= n)
      throw DataError("predictions: unknown sensor id " + std::to_string(p.sensor_id));
    if (!test.range.contains(p.timestamp)) continue;
    auto& slot = grid[(p.timestamp - test.range.begin) * n + p.sensor_id];
    if (slot)
      throw DataError("predictions: duplicate row for timestamp " + std::to_string(p.timestamp) +
                      ", sensor " + std::to_string(p.sensor_id));
    slot = &p;
  }

  const auto& real = dataset.realization(test.realization);
  const std::size_t first = dataset.first_timestep();
  CalibrationResult result;
  result.experiment = split.experiment;
  result.samples = steps * n;

  double se25 = 0.0, se10 = 0.0, de25 = 0.0, de10 = 0.0, raw25 = 0.0, raw10 = 0.0;
  std::vector<double> sensor_se(n, 0.0);
  std::vector<ScatterPoint> sc25, sc10;
  sc25.reserve(steps * n);
  sc10.reserve(steps * n);
  // Accumulate in (timestamp, sensor) order regardless of the file's row order.
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t t = test.range.begin + s;
    const std::size_t i = t - first;
    for (std::size_t k = 0; k < n; ++k) {
      const Prediction* p = grid[s * n + k];
      if (!p)
        throw DataError("predictions: missing row for timestamp " + std::to_string(t) +
                        ", sensor " + std::to_string(k));
      const double y25 = scaler.pm25(dataset.truth[k].pm25[i]);
      const double y10 = scaler.pm10(dataset.truth[k].pm10[i]);
      const double x25 = scaler.pm25(real.drifted[k].pm25[i]);
      const double x10 = scaler.pm10(real.drifted[k].pm10[i]);

      const double e25 = p->pm25 - y25;
      const double e10 = p->pm10 - y10;
      se25 += e25 * e25;
      se10 += e10 * e10;
      sensor_se[k] += e25 * e25 + e10 * e10;

      const ScatterPoint d25{x25 - y25, x25 - p->pm25};
      const ScatterPoint d10{x10 - y10, x10 - p->pm10};
      de25 += (d25.predicted_drift - d25.true_drift) * (d25.predicted_drift - d25.true_drift);
      de10 += (d10.predicted_drift - d10.true_drift) * (d10.predicted_drift - d10.true_drift);
      sc25.push_back(d25);
      sc10.push_back(d10);

      const double r25 = p->pm25 * scaler.pm25_scale - dataset.truth[k].pm25[i];
      const double r10 = p->pm10 * scaler.pm10_scale - dataset.truth[k].pm10[i];
      raw25 += r25 * r25;
      raw10 += r10 * r10;
    }
  }

  const double count = static_cast<double>(result.samples);
  result.pm25 = {se25 / count, de25 / count, raw25 / count};
  result.pm10 = {se10 / count, de10 / count, raw10 / count};
  result.mse_all = (se25 + se10) / (2.0 * count);
  result.drift_mse_all = (de25 + de10) / (2.0 * count);
  result.raw_mse_all = (raw25 + raw10) / (2.0 * count);
  result.per_sensor_mse.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.per_sensor_mse[k] = sensor_se[k] / (2.0 * static_cast<double>(steps));
  }

  const std::uint64_t seed = dataset.config.master_seed;
  result.scatter_pm25 = subsample(std::move(sc25), options.max_scatter_points, seed,
                                  "evaluation/scatter/pm25");
  result.scatter_pm10 = subsample(std::move(sc10), options.max_scatter_points, seed,
                                  "evaluation/scatter/pm10");
  return result;
}

void write_scatter(const std::filesystem::path& path, std::span<const ScatterPoint> points) {
  csv::Writer w(path);
  w.header({"true_drift", "predicted_drift"});
  for (const auto& p : points) {
    w.field(p.true_drift).field(p.predicted_drift);
    w.end_row();
  }
  w.close();
}

}  // namespace wsncal
