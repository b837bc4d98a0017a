#include "wsncal/split.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

#include "wsncal/csv.hpp"
#include "wsncal/errors.hpp"

namespace wsncal {

using nlohmann::json;

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::kStandard: return "standard";
    case Experiment::kLimited: return "limited";
    case Experiment::kDriftGen: return "drift-gen";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (Experiment e : kAllExperiments) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

namespace {

constexpr std::size_t month(std::size_t m) { return m * kMonthLength; }
constexpr int kDriftGenRealizations = 6;

TimeRange clipped(std::size_t begin, std::size_t end) {
  return {std::max(begin, kWarmup), end};
}

}  // namespace

bool split_feasible(std::size_t T, int n_realizations, Experiment experiment) {
  if (T < kYearLength) return false;
  return experiment != Experiment::kDriftGen || n_realizations >= kDriftGenRealizations;
}

ExperimentSplit make_split(std::size_t T, int n_realizations, Experiment experiment) {
  if (T < kYearLength)
    throw DataError("dataset too short: " + std::to_string(T) + " timesteps, " +
                    std::to_string(kYearLength) + " required for experiment splits");
  ExperimentSplit s;
  s.experiment = experiment;
  switch (experiment) {
    case Experiment::kStandard:
      s.train = {{1, clipped(0, month(7))}};
      s.validation = {{1, clipped(month(7), month(8))}};
      s.test = {{1, clipped(month(8), month(12))}};
      break;
    case Experiment::kLimited: {
      const std::size_t val_begin = month(3) - 3 * kWeekLength;
      s.train = {{1, clipped(0, val_begin)}};
      s.validation = {{1, clipped(val_begin, month(3))}};
      s.test = {{1, clipped(month(3), month(12))}};
      break;
    }
    case Experiment::kDriftGen:
      if (n_realizations < kDriftGenRealizations)
        throw DataError("drift-gen needs 6 drift realizations, dataset has " +
                        std::to_string(n_realizations));
      for (int r = 1; r < kDriftGenRealizations; ++r) {
        s.train.push_back({r, clipped(0, month(8))});
        s.validation.push_back({r, clipped(month(8), month(12))});
      }
      s.test = {{kDriftGenRealizations, clipped(0, month(12))}};
      break;
  }
  return s;
}

ExperimentSplit make_split(const Dataset& dataset, Experiment experiment) {
  return make_split(dataset.config.T, static_cast<int>(dataset.realizations.size()), experiment);
}

json split_to_json(const ExperimentSplit& split) {
  auto parts = [](const std::vector<SplitPart>& v) {
    json arr = json::array();
    for (const auto& p : v) {
      arr.push_back({{"realization", p.realization},
                     {"begin", p.range.begin},
                     {"end", p.range.end},
                     {"timesteps", p.range.size()}});
    }
    return arr;
  };
  return {{"experiment", to_string(split.experiment)},
          {"train", parts(split.train)},
          {"validation", parts(split.validation)},
          {"test", parts(split.test)}};
}

double Scaler::min_max(double v, const Interval& range) {
  if (range.hi == range.lo) return 0.5;
  return (v - range.lo) / (range.hi - range.lo);
}

json Scaler::to_json() const {
  return {{"pm25_scale", pm25_scale},
          {"pm10_scale", pm10_scale},
          {"temperature", {temperature.lo, temperature.hi}},
          {"humidity", {humidity.lo, humidity.hi}},
          {"wind_speed", {wind_speed.lo, wind_speed.hi}}};
}

Scaler Scaler::from_json(const json& j) {
  Scaler s;
  s.pm25_scale = j.at("pm25_scale").get<double>();
  s.pm10_scale = j.at("pm10_scale").get<double>();
  auto interval = [&](const char* key) {
    return Interval{j.at(key).at(0).get<double>(), j.at(key).at(1).get<double>()};
  };
  s.temperature = interval("temperature");
  s.humidity = interval("humidity");
  s.wind_speed = interval("wind_speed");
  return s;
}

std::string Scaler::hash() const {
  std::string canonical;
  for (double v : {pm25_scale, pm10_scale, temperature.lo, temperature.hi, humidity.lo,
                   humidity.hi, wind_speed.lo, wind_speed.hi}) {
    csv::append_number(canonical, v);
    canonical.push_back(';');
  }
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Scaler fit_scaler(const Dataset& dataset, const ExperimentSplit& split) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double max25 = -kInf;
  double max10 = -kInf;
  Interval temperature{kInf, -kInf};
  Interval humidity{kInf, -kInf};
  Interval wind{kInf, -kInf};
  auto widen = [](Interval& r, double v) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  };

  const std::size_t first = dataset.first_timestep();
  for (const auto& part : split.train) {
    const auto& real = dataset.realization(part.realization);
    for (std::size_t t = part.range.begin; t < part.range.end; ++t) {
      const std::size_t i = t - first;
      for (const auto& s : real.drifted) {
        max25 = std::max(max25, s.pm25[i]);
        max10 = std::max(max10, s.pm10[i]);
      }
      widen(temperature, dataset.weather.temperature[i]);
      widen(humidity, dataset.weather.humidity[i]);
      widen(wind, dataset.weather.wind_speed[i]);
    }
  }
  if (!(max25 > 0.0) || !(max10 > 0.0))
    throw DataError("normalize: training split has a nonpositive maximum drifted value");

  Scaler s;
  s.pm25_scale = max25;
  s.pm10_scale = max10;
  s.temperature = temperature;
  s.humidity = humidity;
  s.wind_speed = wind;
  return s;
}

const NormalizedRealization& NormalizedDataset::realization(int id) const {
  for (const auto& r : realizations) {
    if (r.id == id) return r;
  }
  throw ContractError("normalized realization " + std::to_string(id) + " not present");
}

NormalizedDataset normalize(const Dataset& dataset, const ExperimentSplit& split) {
  NormalizedDataset out;
  out.scaler = fit_scaler(dataset, split);
  const Scaler& sc = out.scaler;

  const auto& w = dataset.weather;
  out.temperature.resize(w.size());
  out.humidity.resize(w.size());
  out.wind_speed.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.temperature[i] = Scaler::min_max(w.temperature[i], sc.temperature);
    out.humidity[i] = Scaler::min_max(w.humidity[i], sc.humidity);
    out.wind_speed[i] = Scaler::min_max(w.wind_speed[i], sc.wind_speed);
  }

  std::set<int> ids;
  for (const auto* parts : {&split.train, &split.validation, &split.test}) {
    for (const auto& p : *parts) ids.insert(p.realization);
  }
  auto scaled = [&](const SensorSeries& s) {
    SensorSeries n;
    n.pm25.resize(s.pm25.size());
    n.pm10.resize(s.pm10.size());
    for (std::size_t i = 0; i < s.pm25.size(); ++i) {
      n.pm25[i] = sc.pm25(s.pm25[i]);
      n.pm10[i] = sc.pm10(s.pm10[i]);
    }
    return n;
  };
  for (int id : ids) {
    const auto& real = dataset.realization(id);
    NormalizedRealization nr;
    nr.id = id;
    for (std::size_t k = 0; k < dataset.sensor_count(); ++k) {
      nr.truth.push_back(scaled(dataset.truth[k]));
      nr.drifted.push_back(scaled(real.drifted[k]));
    }
    out.realizations.push_back(std::move(nr));
  }
  return out;
}

}  // namespace wsncal
