#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsncal/dataset.hpp"
#include "wsncal/drift.hpp"

namespace wsncal {

enum class Experiment { kStandard, kLimited, kDriftGen };

const char* to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
inline constexpr Experiment kAllExperiments[] = {Experiment::kStandard, Experiment::kLimited,
                                                 Experiment::kDriftGen};

// Half-open timestep range.
struct TimeRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end > begin ? end - begin : 0; }
  bool contains(std::size_t t) const { return begin <= t && t < end; }
  friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

struct SplitPart {
  int realization = 1;
  TimeRange range;
  friend bool operator==(const SplitPart&, const SplitPart&) = default;
};

struct ExperimentSplit {
  Experiment experiment = Experiment::kStandard;
  std::vector<SplitPart> train;
  std::vector<SplitPart> validation;
  std::vector<SplitPart> test;
};

// Months are 720 steps; ranges are clipped to the exported timeline
// [kWarmup, T). Requires T >= 12 months, and 6 realizations for drift-gen.
ExperimentSplit make_split(std::size_t T, int n_realizations, Experiment experiment);
ExperimentSplit make_split(const Dataset& dataset, Experiment experiment);
bool split_feasible(std::size_t T, int n_realizations, Experiment experiment);

nlohmann::json split_to_json(const ExperimentSplit& split);

// Training-split statistics applied to every split. PM channels are divided
// by the largest drifted training value; weather channels are min-max scaled.
struct Scaler {
  double pm25_scale = 1.0;
  double pm10_scale = 1.0;
  Interval temperature;
  Interval humidity;
  Interval wind_speed;

  double pm25(double v) const { return v / pm25_scale; }
  double pm10(double v) const { return v / pm10_scale; }
  // Constant channels map to 0.5.
  static double min_max(double v, const Interval& range);

  nlohmann::json to_json() const;
  static Scaler from_json(const nlohmann::json& j);
  // Stable fingerprint of the scaler values, used to detect unit mismatches.
  std::string hash() const;
};

Scaler fit_scaler(const Dataset& dataset, const ExperimentSplit& split);

struct NormalizedRealization {
  int id = 1;
  std::vector<SensorSeries> truth;
  std::vector<SensorSeries> drifted;
};

struct NormalizedDataset {
  Scaler scaler;
  std::vector<double> temperature;
  std::vector<double> humidity;
  std::vector<double> wind_speed;
  std::vector<NormalizedRealization> realizations;  // those referenced by the split

  const NormalizedRealization& realization(int id) const;
};

NormalizedDataset normalize(const Dataset& dataset, const ExperimentSplit& split);

}  // namespace wsncal
