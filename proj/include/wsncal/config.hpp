#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "wsncal/context.hpp"
#include "wsncal/dispersion.hpp"
#include "wsncal/drift.hpp"
#include "wsncal/phenomenon.hpp"
#include "wsncal/scene.hpp"

namespace wsncal {

struct GenerationConfig {
  std::uint64_t master_seed = 1;
  // Generated timesteps, warmup included. Twelve 720-step months by default.
  std::size_t T = kYearLength;
  int n_drift_realizations = 1;

  SceneParams scene;
  EmissionParams emission;
  WeatherParams weather;
  DispersionParams dispersion;
  DriftConfig drift;
  ContextParams context;

  // Throws ContractError on an invalid combination.
  void validate() const;
};

// Flat key/value document. Unknown keys are rejected so that typos do not
// silently fall back to defaults.
GenerationConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const GenerationConfig& config);
GenerationConfig load_config(const std::filesystem::path& path);

}  // namespace wsncal
