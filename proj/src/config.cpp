#include "wsncal/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "wsncal/errors.hpp"

namespace wsncal {

using nlohmann::json;

void GenerationConfig::validate() const {
  if (T < kMonthLength) throw ContractError("config: T must cover at least one 720-step window");
  if (n_drift_realizations < 1) throw ContractError("config: n_drift_realizations must be >= 1");
  if (scene.n_sources < 1) throw ContractError("config: n_sources must be >= 1");
  if (scene.n_static < 0 || scene.n_mobile < 0)
    throw ContractError("config: sensor counts must be >= 0");
  if (scene.n_static + scene.n_mobile < 1) throw ContractError("config: at least one sensor");
  if (!(scene.source_radius > 0.0) || !(scene.sensor_radius > 0.0))
    throw ContractError("config: radii must be > 0");
  if (!(scene.min_separation >= 0.0)) throw ContractError("config: min_separation must be >= 0");
  if (!(0.0 <= scene.waypoint_radius_min && scene.waypoint_radius_min <= scene.waypoint_radius_max))
    throw ContractError("config: waypoint_radius_range must be an ordered nonnegative pair");
  if (!(1 <= scene.waypoint_count_min && scene.waypoint_count_min <= scene.waypoint_count_max))
    throw ContractError("config: waypoint_count_range must be an ordered pair >= 1");
  if (!(drift.noise_sd >= 0.0)) throw ContractError("config: noise_sd must be >= 0");
  if (drift.fixed_tau && !(*drift.fixed_tau >= 0.0 && *drift.fixed_tau <= 1.0))
    throw ContractError("config: fixed_tau must lie in [0, 1]");
  if (!(context.neighborhood_radius > 0.0))
    throw ContractError("config: neighborhood_radius must be > 0");
  if (!(dispersion.denominator_floor_factor > 0.0))
    throw ContractError("config: denominator_floor must be > 0");
}

namespace {

template <typename T>
void read(const json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc.at(key).get<T>();
}

void read_pair(const json& doc, const char* key, double& lo, double& hi) {
  if (!doc.contains(key)) return;
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 2) throw DataError(std::string("config: ") + key + " must be [lo, hi]");
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

void read_pair(const json& doc, const char* key, int& lo, int& hi) {
  if (!doc.contains(key)) return;
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 2) throw DataError(std::string("config: ") + key + " must be [lo, hi]");
  lo = v[0].get<int>();
  hi = v[1].get<int>();
}

const std::set<std::string> kKnownKeys = {
    "master_seed",     "T",           "n_drift_realizations", "n_sources",
    "n_static",        "n_mobile",    "source_radius",        "sensor_radius",
    "min_separation",  "waypoint_radius_range", "waypoint_count_range", "sine_amplitude",
    "wind_scale_mean", "wind_scale_sd", "wind_scale_floor",   "denominator_floor",
    "f_alpha_mean",    "f_alpha_sd",  "f_beta_mean",          "f_beta_sd",
    "f_c_mean",        "f_c_sd",      "noise_sd",             "weather_coupling",
    "fixed_tau",       "neighborhood_radius"};

}  // namespace

GenerationConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw DataError("config: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.count(key)) throw DataError("config: unknown key '" + key + "'");
  }

  GenerationConfig c;
  try {
    read(doc, "master_seed", c.master_seed);
    read(doc, "T", c.T);
    read(doc, "n_drift_realizations", c.n_drift_realizations);
    read(doc, "n_sources", c.scene.n_sources);
    read(doc, "n_static", c.scene.n_static);
    read(doc, "n_mobile", c.scene.n_mobile);
    read(doc, "source_radius", c.scene.source_radius);
    read(doc, "sensor_radius", c.scene.sensor_radius);
    read(doc, "min_separation", c.scene.min_separation);
    read_pair(doc, "waypoint_radius_range", c.scene.waypoint_radius_min, c.scene.waypoint_radius_max);
    read_pair(doc, "waypoint_count_range", c.scene.waypoint_count_min, c.scene.waypoint_count_max);
    read(doc, "sine_amplitude", c.emission.sine_amplitude);
    read(doc, "wind_scale_mean", c.weather.wind.target_mean);
    read(doc, "wind_scale_sd", c.weather.wind.target_sd);
    read(doc, "wind_scale_floor", c.weather.wind.target_floor);
    read(doc, "denominator_floor", c.dispersion.denominator_floor_factor);
    read(doc, "f_alpha_mean", c.drift.f_alpha_mean);
    read(doc, "f_alpha_sd", c.drift.f_alpha_sd);
    read(doc, "f_beta_mean", c.drift.f_beta_mean);
    read(doc, "f_beta_sd", c.drift.f_beta_sd);
    read(doc, "f_c_mean", c.drift.f_c_mean);
    read(doc, "f_c_sd", c.drift.f_c_sd);
    read(doc, "noise_sd", c.drift.noise_sd);
    read(doc, "weather_coupling", c.drift.weather_coupling);
    if (doc.contains("fixed_tau") && !doc.at("fixed_tau").is_null())
      c.drift.fixed_tau = doc.at("fixed_tau").get<double>();
    read(doc, "neighborhood_radius", c.context.neighborhood_radius);
  } catch (const json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const GenerationConfig& c) {
  json j;
  j["master_seed"] = c.master_seed;
  j["T"] = c.T;
  j["n_drift_realizations"] = c.n_drift_realizations;
  j["n_sources"] = c.scene.n_sources;
  j["n_static"] = c.scene.n_static;
  j["n_mobile"] = c.scene.n_mobile;
  j["source_radius"] = c.scene.source_radius;
  j["sensor_radius"] = c.scene.sensor_radius;
  j["min_separation"] = c.scene.min_separation;
  j["waypoint_radius_range"] = {c.scene.waypoint_radius_min, c.scene.waypoint_radius_max};
  j["waypoint_count_range"] = {c.scene.waypoint_count_min, c.scene.waypoint_count_max};
  j["sine_amplitude"] = c.emission.sine_amplitude;
  j["wind_scale_mean"] = c.weather.wind.target_mean;
  j["wind_scale_sd"] = c.weather.wind.target_sd;
  j["wind_scale_floor"] = c.weather.wind.target_floor;
  j["denominator_floor"] = c.dispersion.denominator_floor_factor;
  j["f_alpha_mean"] = c.drift.f_alpha_mean;
  j["f_alpha_sd"] = c.drift.f_alpha_sd;
  j["f_beta_mean"] = c.drift.f_beta_mean;
  j["f_beta_sd"] = c.drift.f_beta_sd;
  j["f_c_mean"] = c.drift.f_c_mean;
  j["f_c_sd"] = c.drift.f_c_sd;
  j["noise_sd"] = c.drift.noise_sd;
  j["weather_coupling"] = c.drift.weather_coupling;
  j["fixed_tau"] = c.drift.fixed_tau ? json(*c.drift.fixed_tau) : json(nullptr);
  j["neighborhood_radius"] = c.context.neighborhood_radius;
  return j;
}

GenerationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace wsncal
