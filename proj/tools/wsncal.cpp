// Command line front end: generate, split, stats, oracle, evaluate, plot.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wsncal/csv.hpp"
#include "wsncal/dataset.hpp"
#include "wsncal/errors.hpp"
#include "wsncal/evaluation.hpp"
#include "wsncal/plot.hpp"
#include "wsncal/split.hpp"

namespace fs = std::filesystem;
using namespace wsncal;

namespace {

Experiment experiment_or_throw(const std::string& name) {
  const auto e = parse_experiment(name);
  if (!e) throw DataError("unknown experiment '" + name + "' (standard|limited|drift-gen)");
  return *e;
}

void print_scores(const CalibrationResult& r) {
  std::printf("experiment: %s (%zu test samples per pollutant)\n", to_string(r.experiment),
              r.samples);
  std::printf("%-24s %14s %14s %14s\n", "", "All", "PM2.5", "PM10");
  std::printf("%-24s %14.6g %14.6g %14.6g\n", "MSE (normalized)", r.mse_all, r.pm25.mse,
              r.pm10.mse);
  std::printf("%-24s %14.6g %14.6g %14.6g\n", "drift MSE (normalized)", r.drift_mse_all,
              r.pm25.drift_mse, r.pm10.drift_mse);
  std::printf("%-24s %14.6g %14.6g %14.6g\n", "MSE (concentration)", r.raw_mse_all,
              r.pm25.raw_mse, r.pm10.raw_mse);
}

int run_generate(const std::string& config_path, const std::string& out) {
  const auto config = load_config(config_path);
  const auto dataset = generate(config);
  write_dataset(dataset, out);
  const auto& st = dataset.stats;
  std::printf("wrote %s: %zu sensors, %zu timesteps, %d realization(s)\n", out.c_str(),
              dataset.sensor_count(), dataset.steps(), config.n_drift_realizations);
  std::printf("denominator clamps: %llu of %llu coefficient samples\n",
              static_cast<unsigned long long>(st.dispersion.clamped),
              static_cast<unsigned long long>(st.dispersion.samples));
  return 0;
}

int run_split(const std::string& name, const std::string& data) {
  const Experiment e = experiment_or_throw(name);
  const auto dataset = read_dataset(data);
  const auto split = make_split(dataset, e);
  const auto scaler = fit_scaler(dataset, split);

  const auto manifest = read_manifest(data);
  const auto& recorded = manifest.at("scalers");
  if (recorded.contains(name) && recorded.at(name).at("hash") != scaler.hash())
    throw DataError("scaler recomputed from files does not match the manifest");

  auto doc = split_to_json(split);
  doc["scaler"] = scaler.to_json();
  doc["scaler"]["hash"] = scaler.hash();
  const fs::path out = fs::path(data) / ("split_" + name + ".json");
  std::ofstream(out) << doc.dump(2) << '\n';

  auto describe = [](const char* label, const std::vector<SplitPart>& parts) {
    for (const auto& p : parts) {
      std::printf("%-10s realization %d  [%zu, %zu)  %zu timesteps\n", label, p.realization,
                  p.range.begin, p.range.end, p.range.size());
    }
  };
  describe("train", split.train);
  describe("validation", split.validation);
  describe("test", split.test);
  std::printf("scaler hash %s written to %s\n", scaler.hash().c_str(), out.c_str());
  return 0;
}

int run_stats(const std::string& data) {
  const auto manifest = read_manifest(data);
  std::cout << "generation statistics:\n" << manifest.at("statistics").dump(2) << "\n";
  const auto dataset = read_dataset(data);
  for (Experiment e : kAllExperiments) {
    if (!split_feasible(dataset.config.T, static_cast<int>(dataset.realizations.size()), e))
      continue;
    const auto split = make_split(dataset, e);
    const auto identity = evaluate(identity_predictions(dataset, split), dataset, split);
    const auto oracle =
        evaluate(oracle_predictions(dataset, split, fit_oracle(dataset, split)), dataset, split);
    std::printf("%-10s identity-calibration MSE %.6g (PM2.5 %.6g, PM10 %.6g); "
                "oracle MSE %.6g\n",
                to_string(e), identity.mse_all, identity.pm25.mse, identity.pm10.mse,
                oracle.mse_all);
  }
  return 0;
}

int run_oracle(const std::string& name, const std::string& data, const std::string& out) {
  const Experiment e = experiment_or_throw(name);
  const auto dataset = read_dataset(data);
  const auto split = make_split(dataset, e);
  write_predictions(out, oracle_predictions(dataset, split, fit_oracle(dataset, split)));
  std::printf("wrote oracle predictions for %s to %s\n", name.c_str(), out.c_str());
  return 0;
}

int run_evaluate(const std::string& pred, const std::string& data, const std::string& name,
                 const std::string& out) {
  const Experiment e = experiment_or_throw(name);
  const auto dataset = read_dataset(data);
  const auto split = make_split(dataset, e);
  const auto result = evaluate(read_predictions(pred), dataset, split);
  print_scores(result);
  fs::create_directories(out);
  write_scatter(fs::path(out) / "scatter_pm25.csv", result.scatter_pm25);
  write_scatter(fs::path(out) / "scatter_pm10.csv", result.scatter_pm10);
  return 0;
}

int run_plot(const std::string& scatter, const std::string& data, int sensor, int realization,
             const std::string& out) {
  if (!scatter.empty()) {
    const auto table = csv::Table::read(scatter);
    const auto ct = table.column("true_drift");
    const auto cp = table.column("predicted_drift");
    std::vector<ScatterPoint> points;
    for (std::size_t r = 0; r < table.rows(); ++r)
      points.push_back({table.number(r, ct), table.number(r, cp)});
    write_scatter_svg(out, points, "predicted vs true drift: " + fs::path(scatter).stem().string());
  } else {
    const auto dataset = read_dataset(data);
    if (sensor < 0 || static_cast<std::size_t>(sensor) >= dataset.sensor_count())
      throw DataError("sensor id out of range");
    const auto& real = dataset.realization(realization);
    const auto k = static_cast<std::size_t>(sensor);
    const LineSeries series[] = {{"PM2.5 true", dataset.truth[k].pm25},
                                 {"PM2.5 drifted", real.drifted[k].pm25},
                                 {"PM10 true", dataset.truth[k].pm10},
                                 {"PM10 drifted", real.drifted[k].pm10}};
    write_series_svg(out, series,
                     "sensor " + std::to_string(sensor) + ", realization " +
                         std::to_string(realization));
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic air-quality sensor network data with injected drift, and calibration scoring"};
  app.require_subcommand(1);

  std::string config, out, data, experiment, pred, scatter;
  int sensor = -1;
  int realization = 1;

  auto* gen = app.add_subcommand("generate", "Generate a dataset directory from a config file");
  gen->add_option("--config", config, "Generation config (JSON)")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", out, "Output directory")->required();

  auto* split = app.add_subcommand("split", "Materialize an experiment split and its scaler");
  split->add_option("--experiment", experiment, "standard | limited | drift-gen")->required();
  split->add_option("--data", data, "Dataset directory")->required()->check(CLI::ExistingDirectory);

  auto* stats = app.add_subcommand("stats", "Print generation statistics and baseline MSEs");
  stats->add_option("--data", data, "Dataset directory")->required()->check(CLI::ExistingDirectory);

  auto* oracle = app.add_subcommand("oracle", "Write least-squares reference predictions");
  oracle->add_option("--data", data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  oracle->add_option("--experiment", experiment, "standard | limited | drift-gen")->required();
  oracle->add_option("--out", out, "Predictions file")->required();

  auto* eval = app.add_subcommand("evaluate", "Score a predictions file");
  eval->add_option("--pred", pred, "Predictions file")->required()->check(CLI::ExistingFile);
  eval->add_option("--data", data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--experiment", experiment, "standard | limited | drift-gen")->required();
  std::string scatter_dir = ".";
  eval->add_option("--out", scatter_dir, "Directory for scatter_pm25.csv / scatter_pm10.csv");

  auto* plot = app.add_subcommand("plot", "Render a scatter file or a sensor time series as SVG");
  auto* scatter_opt = plot->add_option("--scatter", scatter, "Scatter CSV from evaluate");
  auto* data_opt = plot->add_option("--data", data, "Dataset directory");
  plot->add_option("--sensor", sensor, "Sensor id for a time-series plot")->needs(data_opt);
  plot->add_option("--realization", realization, "Drift realization")->needs(data_opt);
  plot->add_option("--out", out, "Output SVG")->required();
  scatter_opt->excludes(data_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(config, out);
    if (*split) return run_split(experiment, data);
    if (*stats) return run_stats(data);
    if (*oracle) return run_oracle(experiment, data, out);
    if (*eval) return run_evaluate(pred, data, experiment, scatter_dir);
    if (*plot) {
      if (scatter.empty() && data.empty()) throw DataError("plot needs --scatter or --data");
      return run_plot(scatter, data, sensor, realization, out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
