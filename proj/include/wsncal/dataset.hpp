#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsncal/config.hpp"
#include "wsncal/dispersion.hpp"
#include "wsncal/drift.hpp"
#include "wsncal/phenomenon.hpp"
#include "wsncal/scene.hpp"

namespace wsncal {

// Per-sensor channel series over the exported timeline: element i belongs to
// timestep kWarmup + i.
struct SensorSeries {
  std::vector<double> pm25;
  std::vector<double> pm10;
};

struct Realization {
  int id = 1;  // 1-based, matches the realization-<id> directory
  std::vector<SensorDrift> drift;
  std::vector<SensorSeries> drifted;
};

struct RealizationStats {
  int id = 1;
  Interval drifted_pm25;
  Interval drifted_pm10;
  // Share of samples with |x - y| / max(y) < 0.5, max taken per sensor and channel.
  double drift_gate_fraction = 0.0;
  double mean_abs_drift_pm25 = 0.0;
  double mean_abs_drift_pm10 = 0.0;
};

struct GenerationStats {
  DispersionStats dispersion;
  Interval true_pm25;
  Interval true_pm10;
  std::vector<RealizationStats> realizations;
};

struct Dataset {
  GenerationConfig config;
  Scene scene;
  WeatherSeries weather;  // exported timeline only
  std::vector<SensorSeries> truth;
  std::vector<Realization> realizations;
  GenerationStats stats;

  std::size_t first_timestep() const { return kWarmup; }
  std::size_t end_timestep() const { return config.T; }
  std::size_t steps() const { return config.T - kWarmup; }
  std::size_t sensor_count() const { return scene.sensor_count(); }
  const Realization& realization(int id) const;
};

// Runs the full pipeline in memory: scene, emissions and weather, true
// readings, then every drift realization over the same true series.
Dataset generate(const GenerationConfig& config);

// Writes manifest.json, weather.csv and realization-<id>/{readings,context}.csv.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

// Reads back everything write_dataset produced except the context tables.
Dataset read_dataset(const std::filesystem::path& dir);

nlohmann::json read_manifest(const std::filesystem::path& dir);

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kWeatherFile = "weather.csv";
inline constexpr const char* kReadingsFile = "readings.csv";
inline constexpr const char* kContextFile = "context.csv";

std::string realization_directory(int id);

nlohmann::json scene_to_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& j);
nlohmann::json drift_to_json(const SensorDrift& drift);
SensorDrift drift_from_json(const nlohmann::json& j);

}  // namespace wsncal
