#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repligame/dynamics.hpp"

namespace repligame {

/// Declarative description of one experiment run.
struct Scenario {
  std::string name;
  std::string game_source = "penalty-shootout";  // built-in name or "file:<path>"
  SimMode mode = SimMode::kUncontrolled;
  double sigma = 0.0;
  uint64_t seed = 0;
  std::vector<double> gains;  // empty (uncontrolled), one value (uniform) or 2n values (k then c)
  double dt = 1e-3;
  double t_final = 200.0;
  // Explicit start overriding the Gaussian perturbation, as (x, y) concatenated.
  std::optional<std::vector<double>> initial;
  std::vector<std::string> outputs = {"csv", "strategies"};
};

struct OutputRecord {
  std::string kind;  // "csv", "strategies", "payoff-differences", "lyapunov"
  std::string path;
  std::string digest;
};

struct RunManifest {
  std::string scenario_name;
  std::string config_echo;  // resolved scenario as JSON text
  NashPoint nash;
  std::vector<OutputRecord> outputs;
};

/// The bundled experiment catalog.
std::vector<Scenario> list_builtin_scenarios();

/// Looks up a bundled scenario by name; throws if unknown.
Scenario builtin_scenario(const std::string& name);

/// Parses a scenario from a JSON config file.
Scenario load_scenario_file(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);

RunManifest run_scenario(const Scenario& scenario, const std::string& out_dir);

std::string manifest_to_json(const RunManifest& manifest);

}  // namespace repligame
