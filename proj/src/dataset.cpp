#include "wsncal/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "wsncal/context.hpp"
#include "wsncal/csv.hpp"
#include "wsncal/errors.hpp"
#include "wsncal/split.hpp"

namespace wsncal {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFormatVersion = 1;

void widen(Interval& r, double v) {
  r.lo = std::min(r.lo, v);
  r.hi = std::max(r.hi, v);
}

std::vector<double> tail(const std::vector<double>& v, std::size_t from) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.end()};
}

json point_json(const Point& p) { return json::array({p.x, p.y}); }
Point point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
json interval_json(const Interval& r) { return json::array({r.lo, r.hi}); }
Interval interval_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json coupling_json(const CouplingRanges& c) {
  return {{"temperature", interval_json(c.temperature)},
          {"humidity", interval_json(c.humidity)},
          {"history", interval_json(c.history)}};
}

CouplingRanges coupling_from(const json& j) {
  return {interval_from(j.at("temperature")), interval_from(j.at("humidity")),
          interval_from(j.at("history"))};
}

json channel_json(const ChannelDrift& c) {
  return {{"f_alpha", c.f_alpha},
          {"f_beta", c.f_beta},
          {"f_c", c.f_c},
          {"alpha_ranges", coupling_json(c.alpha)},
          {"beta_ranges", coupling_json(c.beta)},
          {"c_ranges", coupling_json(c.constant)}};
}

ChannelDrift channel_from(const json& j) {
  ChannelDrift c;
  c.f_alpha = j.at("f_alpha").get<double>();
  c.f_beta = j.at("f_beta").get<double>();
  c.f_c = j.at("f_c").get<double>();
  c.alpha = coupling_from(j.at("alpha_ranges"));
  c.beta = coupling_from(j.at("beta_ranges"));
  c.constant = coupling_from(j.at("c_ranges"));
  return c;
}

RealizationStats realization_stats(const Dataset& ds, const Realization& real) {
  RealizationStats st;
  st.id = real.id;
  st.drifted_pm25 = {kInf, -kInf};
  st.drifted_pm10 = {kInf, -kInf};
  std::size_t within = 0;
  std::size_t total = 0;
  double abs25 = 0.0;
  double abs10 = 0.0;
  for (std::size_t k = 0; k < ds.sensor_count(); ++k) {
    const auto& y = ds.truth[k];
    const auto& x = real.drifted[k];
    const double max25 = *std::max_element(y.pm25.begin(), y.pm25.end());
    const double max10 = *std::max_element(y.pm10.begin(), y.pm10.end());
    for (std::size_t i = 0; i < y.pm25.size(); ++i) {
      widen(st.drifted_pm25, x.pm25[i]);
      widen(st.drifted_pm10, x.pm10[i]);
      const double d25 = std::abs(x.pm25[i] - y.pm25[i]);
      const double d10 = std::abs(x.pm10[i] - y.pm10[i]);
      abs25 += d25;
      abs10 += d10;
      within += (max25 > 0.0 && d25 / max25 < 0.5) ? 1 : 0;
      within += (max10 > 0.0 && d10 / max10 < 0.5) ? 1 : 0;
      total += 2;
    }
  }
  const double samples = static_cast<double>(total / 2);
  st.drift_gate_fraction = total ? static_cast<double>(within) / static_cast<double>(total) : 0.0;
  st.mean_abs_drift_pm25 = samples > 0 ? abs25 / samples : 0.0;
  st.mean_abs_drift_pm10 = samples > 0 ? abs10 / samples : 0.0;
  return st;
}

json stats_json(const GenerationStats& s) {
  json reals = json::array();
  for (const auto& r : s.realizations) {
    reals.push_back({{"realization", r.id},
                     {"drifted_pm25_range", interval_json(r.drifted_pm25)},
                     {"drifted_pm10_range", interval_json(r.drifted_pm10)},
                     {"drift_gate_fraction", r.drift_gate_fraction},
                     {"mean_abs_drift_pm25", r.mean_abs_drift_pm25},
                     {"mean_abs_drift_pm10", r.mean_abs_drift_pm10}});
  }
  const double clamp_fraction =
      s.dispersion.samples ? static_cast<double>(s.dispersion.clamped) /
                                 static_cast<double>(s.dispersion.samples)
                           : 0.0;
  return {{"coefficient_samples", s.dispersion.samples},
          {"denominator_clamps", s.dispersion.clamped},
          {"denominator_clamp_fraction", clamp_fraction},
          {"max_offset", s.dispersion.max_offset},
          {"true_pm25_range", interval_json(s.true_pm25)},
          {"true_pm10_range", interval_json(s.true_pm10)},
          {"realizations", reals}};
}

GenerationStats stats_from(const json& j) {
  GenerationStats s;
  s.dispersion.samples = j.at("coefficient_samples").get<std::uint64_t>();
  s.dispersion.clamped = j.at("denominator_clamps").get<std::uint64_t>();
  s.dispersion.max_offset = j.at("max_offset").get<int>();
  s.true_pm25 = interval_from(j.at("true_pm25_range"));
  s.true_pm10 = interval_from(j.at("true_pm10_range"));
  for (const auto& r : j.at("realizations")) {
    RealizationStats st;
    st.id = r.at("realization").get<int>();
    st.drifted_pm25 = interval_from(r.at("drifted_pm25_range"));
    st.drifted_pm10 = interval_from(r.at("drifted_pm10_range"));
    st.drift_gate_fraction = r.at("drift_gate_fraction").get<double>();
    st.mean_abs_drift_pm25 = r.at("mean_abs_drift_pm25").get<double>();
    st.mean_abs_drift_pm10 = r.at("mean_abs_drift_pm10").get<double>();
    s.realizations.push_back(st);
  }
  return s;
}

void write_weather(const Dataset& ds, const fs::path& path) {
  csv::Writer w(path);
  w.header({"timestamp", "temperature", "humidity", "wind_speed", "wind_direction"});
  for (std::size_t i = 0; i < ds.steps(); ++i) {
    w.field(ds.first_timestep() + i)
        .field(ds.weather.temperature[i])
        .field(ds.weather.humidity[i])
        .field(ds.weather.wind_speed[i])
        .field(ds.weather.wind_direction[i]);
    w.end_row();
  }
  w.close();
}

void write_realization(const Dataset& ds, const Realization& real, const fs::path& dir) {
  fs::create_directories(dir);
  const std::size_t n = ds.sensor_count();

  csv::Writer readings(dir / kReadingsFile);
  readings.header({"timestamp", "sensor_id", "kind", "x", "y", "pm25_true", "pm10_true",
                   "pm25_drifted", "pm10_drifted", "pm25_drift_target", "pm10_drift_target"});

  auto columns = context_column_names();
  columns.insert(columns.begin(), {"timestamp", "sensor_id"});
  csv::Writer context(dir / kContextFile);
  context.header(columns);

  std::vector<SensorRef> refs(n);
  for (std::size_t k = 0; k < n; ++k) refs[k] = sensor_ref(ds.scene, k);
  std::vector<Point> positions(n);
  std::vector<PollutantPair> frame(n);

  for (std::size_t i = 0; i < ds.steps(); ++i) {
    const std::size_t t = ds.first_timestep() + i;
    for (std::size_t k = 0; k < n; ++k) {
      positions[k] = position_at(ds.scene, refs[k], t);
      frame[k] = {real.drifted[k].pm25[i], real.drifted[k].pm10[i]};
    }
    const WeatherSample weather{ds.weather.temperature[i], ds.weather.humidity[i],
                                ds.weather.wind_speed[i], ds.weather.wind_direction[i]};

    for (std::size_t k = 0; k < n; ++k) {
      const double y25 = ds.truth[k].pm25[i];
      const double y10 = ds.truth[k].pm10[i];
      const double x25 = real.drifted[k].pm25[i];
      const double x10 = real.drifted[k].pm10[i];
      readings.field(t)
          .field(k)
          .field(std::string_view(to_string(refs[k].kind)))
          .field(positions[k].x)
          .field(positions[k].y)
          .field(y25)
          .field(y10)
          .field(x25)
          .field(x10)
          .field(x25 - y25)
          .field(x10 - y10);
      readings.end_row();

      const auto ctx = context_vector(k, positions, frame, weather, ds.config.context);
      context.field(t).field(k);
      for (double v : ctx.features()) context.field(v);
      context.end_row();
    }
  }
  readings.close();
  context.close();
}

}  // namespace

std::string realization_directory(int id) { return "realization-" + std::to_string(id); }

const Realization& Dataset::realization(int id) const {
  for (const auto& r : realizations) {
    if (r.id == id) return r;
  }
  throw DataError("dataset has no drift realization " + std::to_string(id));
}

json scene_to_json(const Scene& scene) {
  json sources = json::array();
  for (const auto& p : scene.sources) sources.push_back(point_json(p));
  json statics = json::array();
  for (const auto& p : scene.static_sensors) statics.push_back(point_json(p));
  json paths = json::array();
  for (const auto& path : scene.mobile_paths) {
    json wp = json::array();
    for (const auto& p : path.waypoints) wp.push_back(point_json(p));
    paths.push_back({{"center", point_json(path.center)}, {"waypoints", wp}});
  }
  return {{"system_radius", scene.system_radius},
          {"sources", sources},
          {"static_sensors", statics},
          {"mobile_paths", paths}};
}

Scene scene_from_json(const json& j) {
  Scene s;
  s.system_radius = j.at("system_radius").get<double>();
  for (const auto& p : j.at("sources")) s.sources.push_back(point_from(p));
  for (const auto& p : j.at("static_sensors")) s.static_sensors.push_back(point_from(p));
  for (const auto& path : j.at("mobile_paths")) {
    MobilePath mp;
    mp.center = point_from(path.at("center"));
    for (const auto& p : path.at("waypoints")) mp.waypoints.push_back(point_from(p));
    s.mobile_paths.push_back(std::move(mp));
  }
  return s;
}

json drift_to_json(const SensorDrift& d) {
  return {{"ramp_rate", d.ramp_rate}, {"pm25", channel_json(d.pm25)}, {"pm10", channel_json(d.pm10)}};
}

SensorDrift drift_from_json(const json& j) {
  SensorDrift d;
  d.ramp_rate = j.at("ramp_rate").get<double>();
  d.pm25 = channel_from(j.at("pm25"));
  d.pm10 = channel_from(j.at("pm10"));
  return d;
}

Dataset generate(const GenerationConfig& config) {
  config.validate();
  Dataset ds;
  ds.config = config;
  const std::size_t T = config.T;
  const std::uint64_t seed = config.master_seed;

  ds.scene = generate_scene(config.scene, seed);
  const auto emissions =
      generate_emissions(ds.scene.sources.size(), T, config.emission, seed);
  RandomStream weather_rng(seed, "phenomenon/weather");
  const WeatherSeries weather = sample_weather(T, config.weather, weather_rng);

  const std::size_t n = ds.scene.sensor_count();
  ds.stats.true_pm25 = {kInf, -kInf};
  ds.stats.true_pm10 = {kInf, -kInf};
  ds.truth.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto y = compute_true_series(ds.scene, emissions, weather, sensor_ref(ds.scene, k),
                                 config.dispersion, ds.stats.dispersion);
    for (double v : y.pm25) widen(ds.stats.true_pm25, v);
    for (double v : y.pm10) widen(ds.stats.true_pm10, v);
    ds.truth.push_back({std::move(y.pm25), std::move(y.pm10)});
  }

  ds.weather.temperature = tail(weather.temperature, kWarmup);
  ds.weather.humidity = tail(weather.humidity, kWarmup);
  ds.weather.wind_speed = tail(weather.wind_speed, kWarmup);
  ds.weather.wind_direction = tail(weather.wind_direction, kWarmup);

  for (int r = 1; r <= config.n_drift_realizations; ++r) {
    Realization real;
    real.id = r;
    const std::string prefix = "drift/realization-" + std::to_string(r);
    for (std::size_t k = 0; k < n; ++k) {
      const std::string sensor = prefix + "/sensor-" + std::to_string(k);
      RandomStream param_rng(seed, sensor + "/params");
      const SensorDrift params = sample_drift_params(T, config.drift, param_rng);

      SensorSeries x;
      for (const bool pm25 : {true, false}) {
        const auto& y = pm25 ? ds.truth[k].pm25 : ds.truth[k].pm10;
        RandomStream noise_rng(seed, sensor + (pm25 ? "/pm25/noise" : "/pm10/noise"));
        const auto history = reading_history(y);
        const auto drifted =
            apply_drift(y, pm25 ? params.pm25 : params.pm10, params.ramp_rate,
                        ds.weather.temperature, ds.weather.humidity, history, kWarmup,
                        config.drift, noise_rng);
        auto& out = pm25 ? x.pm25 : x.pm10;
        out.reserve(drifted.size());
        for (const auto& d : drifted) out.push_back(d.x);
      }
      real.drift.push_back(params);
      real.drifted.push_back(std::move(x));
    }
    ds.realizations.push_back(std::move(real));
    ds.stats.realizations.push_back(realization_stats(ds, ds.realizations.back()));
  }
  return ds;
}

void write_dataset(const Dataset& ds, const fs::path& dir) {
  fs::create_directories(dir);

  json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["config"] = config_to_json(ds.config);
  manifest["timeline"] = {{"T", ds.config.T},
                          {"warmup", kWarmup},
                          {"first_timestep", ds.first_timestep()},
                          {"month_length", kMonthLength},
                          {"week_length", kWeekLength}};
  manifest["seeds"] = {
      {"master_seed", ds.config.master_seed},
      {"derivation", "splitmix64(splitmix64(master_seed) ^ fnv1a64(stream_name)) seeds mt19937_64"}};
  manifest["scene"] = scene_to_json(ds.scene);

  json sensors = json::array();
  for (std::size_t k = 0; k < ds.sensor_count(); ++k) {
    const auto ref = sensor_ref(ds.scene, k);
    sensors.push_back({{"sensor_id", k}, {"kind", to_string(ref.kind)}, {"index", ref.index}});
  }
  manifest["sensors"] = sensors;

  json reals = json::array();
  for (const auto& real : ds.realizations) {
    json drift = json::array();
    for (const auto& d : real.drift) drift.push_back(drift_to_json(d));
    reals.push_back({{"realization", real.id},
                     {"directory", realization_directory(real.id)},
                     {"drift_params", drift}});
  }
  manifest["realizations"] = reals;
  manifest["statistics"] = stats_json(ds.stats);

  json scalers = json::object();
  for (Experiment e : kAllExperiments) {
    if (!split_feasible(ds.config.T, static_cast<int>(ds.realizations.size()), e)) continue;
    const auto scaler = fit_scaler(ds, make_split(ds, e));
    json entry = scaler.to_json();
    entry["hash"] = scaler.hash();
    scalers[to_string(e)] = entry;
  }
  manifest["scalers"] = scalers;
  manifest["conventions"] = {
      {"wind_coefficient_divisor", "o + 1 (mean over the o + 1 lag terms)"},
      {"angle_difference_modulo", "nonnegative, modulo pi"},
      {"mobile_traversal", "waypoint[t mod k], one hop per timestep"},
      {"history", "previous drift-free reading, min-max scaled over the exported run"},
      {"drift_target", "drifted - true"},
      {"context_columns",
       "16 PM2.5 area means, 16 PM10 area means, temperature, humidity, wind speed, "
       "8 wind direction flags; sector 0 centered on angle 0, inner ring < R_n/2"}};

  {
    std::ofstream out(dir / kManifestFile, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
  }

  write_weather(ds, dir / kWeatherFile);
  for (const auto& real : ds.realizations) {
    write_realization(ds, real, dir / realization_directory(real.id));
  }
}

json read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifestFile);
  if (!in) throw DataError("no manifest in " + dir.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("manifest in " + dir.string() + ": " + e.what());
  }
}

Dataset read_dataset(const fs::path& dir) {
  const json manifest = read_manifest(dir);
  Dataset ds;
  try {
    if (manifest.at("format_version").get<int>() != kFormatVersion)
      throw DataError("unsupported dataset format version");
    ds.config = config_from_json(manifest.at("config"));
    ds.scene = scene_from_json(manifest.at("scene"));
    ds.stats = stats_from(manifest.at("statistics"));
    for (const auto& r : manifest.at("realizations")) {
      Realization real;
      real.id = r.at("realization").get<int>();
      for (const auto& d : r.at("drift_params")) real.drift.push_back(drift_from_json(d));
      ds.realizations.push_back(std::move(real));
    }
  } catch (const json::exception& e) {
    throw DataError("manifest in " + dir.string() + ": " + e.what());
  }

  const std::size_t steps = ds.steps();
  const std::size_t n = ds.sensor_count();
  const std::size_t first = ds.first_timestep();

  const auto weather = csv::Table::read(dir / kWeatherFile);
  if (weather.rows() != steps) throw DataError("weather.csv: expected " + std::to_string(steps) + " rows");
  {
    const auto ct = weather.column("timestamp");
    const auto cT = weather.column("temperature");
    const auto cH = weather.column("humidity");
    const auto cS = weather.column("wind_speed");
    const auto cD = weather.column("wind_direction");
    for (std::size_t i = 0; i < steps; ++i) {
      if (weather.index(i, ct) != first + i) throw DataError("weather.csv: timestamps out of order");
      ds.weather.temperature.push_back(weather.number(i, cT));
      ds.weather.humidity.push_back(weather.number(i, cH));
      ds.weather.wind_speed.push_back(weather.number(i, cS));
      ds.weather.wind_direction.push_back(weather.number(i, cD));
    }
  }

  for (auto& real : ds.realizations) {
    const fs::path path = dir / realization_directory(real.id) / kReadingsFile;
    const auto table = csv::Table::read(path);
    if (table.rows() != steps * n)
      throw DataError(path.string() + ": expected " + std::to_string(steps * n) + " rows");
    const auto ct = table.column("timestamp");
    const auto cs = table.column("sensor_id");
    const auto y25 = table.column("pm25_true");
    const auto y10 = table.column("pm10_true");
    const auto x25 = table.column("pm25_drifted");
    const auto x10 = table.column("pm10_drifted");

    const bool fill_truth = ds.truth.empty();
    if (fill_truth) ds.truth.assign(n, {std::vector<double>(steps), std::vector<double>(steps)});
    real.drifted.assign(n, {std::vector<double>(steps), std::vector<double>(steps)});
    std::vector<char> seen(steps * n, 0);
    for (std::size_t row = 0; row < table.rows(); ++row) {
      const std::size_t t = table.index(row, ct);
      const std::size_t k = table.index(row, cs);
      if (t < first || t >= ds.end_timestep() || k >= n)
        throw DataError(path.string() + ": row " + std::to_string(row + 1) + " out of range");
      const std::size_t i = t - first;
      if (seen[i * n + k]++) throw DataError(path.string() + ": duplicate row");
      real.drifted[k].pm25[i] = table.number(row, x25);
      real.drifted[k].pm10[i] = table.number(row, x10);
      if (fill_truth) {
        ds.truth[k].pm25[i] = table.number(row, y25);
        ds.truth[k].pm10[i] = table.number(row, y10);
      }
    }
  }
  if (ds.truth.empty()) throw DataError("dataset has no realizations");
  return ds;
}

}  // namespace wsncal
