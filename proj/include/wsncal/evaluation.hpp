#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsncal/dataset.hpp"
#include "wsncal/split.hpp"

namespace wsncal {

// Mean of squared differences. Throws ContractError on length mismatch or
// empty input.
double mse(std::span<const double> predicted, std::span<const double> truth);

// drifted ~ slope * true + intercept. A constant true series falls back to an
// intercept-only model with slope 0.
struct LinearModel {
  double slope = 1.0;
  double intercept = 0.0;
  bool degenerate = false;
  double truth_mean = 0.0;

  // Inverts the fit; a degenerate model predicts the training truth mean.
  double calibrate(double drifted) const;
};

LinearModel fit_linear(std::span<const double> truth, std::span<const double> drifted);

// Ground-truth-aware reference calibrator: one linear model per sensor and
// pollutant, fitted on the training parts of a split.
struct OracleModel {
  std::vector<LinearModel> pm25;
  std::vector<LinearModel> pm10;
};

OracleModel fit_oracle(const Dataset& dataset, const ExperimentSplit& split);

struct Prediction {
  std::size_t timestamp = 0;
  std::size_t sensor_id = 0;
  double pm25 = 0.0;
  double pm10 = 0.0;
};

// Calibrated readings in normalized units. The optional scaler hash is
// carried as a "# scaler_hash=<hex>" comment line ahead of the header.
struct PredictionSet {
  std::optional<std::string> scaler_hash;
  std::vector<Prediction> rows;
};

PredictionSet read_predictions(const std::filesystem::path& path);
void write_predictions(const std::filesystem::path& path, const PredictionSet& predictions);

// One row per test (timestamp, sensor).
PredictionSet oracle_predictions(const Dataset& dataset, const ExperimentSplit& split,
                                 const OracleModel& model);
// Returns the drifted readings unchanged.
PredictionSet identity_predictions(const Dataset& dataset, const ExperimentSplit& split);

struct ScatterPoint {
  double true_drift = 0.0;
  double predicted_drift = 0.0;
};

struct PollutantScore {
  double mse = 0.0;        // calibrated vs true, normalized units
  double drift_mse = 0.0;  // predicted vs true drift target, normalized units
  double raw_mse = 0.0;    // calibrated vs true, concentration units
};

struct CalibrationResult {
  Experiment experiment = Experiment::kStandard;
  std::size_t samples = 0;  // per pollutant
  PollutantScore pm25;
  PollutantScore pm10;
  double mse_all = 0.0;
  double drift_mse_all = 0.0;
  double raw_mse_all = 0.0;
  std::vector<double> per_sensor_mse;  // both pollutants, normalized
  std::vector<ScatterPoint> scatter_pm25;
  std::vector<ScatterPoint> scatter_pm10;
};

struct EvaluateOptions {
  std::size_t max_scatter_points = 20'000;
};

// Scores predictions against the split's test set. Rows outside the test set
// are ignored; missing or duplicated test rows and unknown sensors are errors,
// as is a scaler hash that differs from the split's training scaler.
CalibrationResult evaluate(const PredictionSet& predictions, const Dataset& dataset,
                           const ExperimentSplit& split, const EvaluateOptions& options = {});

void write_scatter(const std::filesystem::path& path, std::span<const ScatterPoint> points);

}  // namespace wsncal
