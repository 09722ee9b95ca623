#include "repligame/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "repligame/csv_export.hpp"
#include "repligame/lyapunov.hpp"
#include "repligame/svg_plot.hpp"

namespace repligame {

namespace {

using nlohmann::json;

Scenario make(const std::string& name, SimMode mode, double sigma, uint64_t seed,
              std::vector<std::string> outputs) {
  Scenario s;
  s.name = name;
  s.mode = mode;
  s.sigma = sigma;
  s.seed = seed;
  if (mode == SimMode::kControlled) {
    s.gains = {0.5};
    s.t_final = 40.0;
  }
  s.outputs = std::move(outputs);
  return s;
}

std::optional<ControllerGains> resolve_gains(const Scenario& s, int n) {
  if (s.mode != SimMode::kControlled) return std::nullopt;
  if (s.gains.size() == 1) {
    return ControllerGains::uniform(n, s.gains.front());
  }
  if (s.gains.size() == 2 * static_cast<size_t>(n)) {
    return ControllerGains(
        std::vector<double>(s.gains.begin(), s.gains.begin() + n),
        std::vector<double>(s.gains.begin() + n, s.gains.end()));
  }
  throw std::invalid_argument("scenario " + s.name + ": gains must be one value or 2n values");
}

std::string mode_name(SimMode m) {
  return m == SimMode::kControlled ? "controlled" : "uncontrolled";
}

}  // namespace

std::vector<Scenario> list_builtin_scenarios() {
  std::vector<Scenario> cat;
  cat.push_back(make("fig1", SimMode::kUncontrolled, 0.0, 0, {"csv", "strategies"}));

  Scenario fig2 = make("fig2", SimMode::kUncontrolled, 0.0, 0, {"csv", "strategies"});
  fig2.initial = std::vector<double>{0.51, 0.42, 0.07, 0.42, 0.27, 0.31};
  cat.push_back(fig2);

  cat.push_back(make("fig3a", SimMode::kUncontrolled, 0.02, 101, {"csv", "strategies"}));
  cat.push_back(make("fig3b", SimMode::kUncontrolled, 0.02, 102, {"csv", "strategies"}));
  cat.push_back(make("fig4a", SimMode::kUncontrolled, 0.2, 201, {"csv", "strategies"}));
  cat.push_back(make("fig4b", SimMode::kUncontrolled, 0.2, 202, {"csv", "strategies"}));
  // payoff-difference views of the 3(a) and 4(a) runs
  cat.push_back(make("fig5", SimMode::kUncontrolled, 0.02, 101, {"csv", "payoff-differences"}));
  cat.push_back(make("fig6", SimMode::kUncontrolled, 0.2, 201, {"csv", "payoff-differences"}));
  cat.push_back(make("fig7a", SimMode::kControlled, 0.02, 301, {"csv", "strategies"}));
  cat.push_back(make("fig7b", SimMode::kControlled, 0.02, 302, {"csv", "strategies"}));
  cat.push_back(make("fig8a", SimMode::kControlled, 0.2, 401, {"csv", "strategies"}));
  cat.push_back(make("fig8b", SimMode::kControlled, 0.2, 402, {"csv", "strategies"}));
  cat.push_back(make("fig9", SimMode::kControlled, 0.02, 301, {"csv", "payoff-differences"}));
  cat.push_back(make("fig10", SimMode::kControlled, 0.2, 401, {"csv", "payoff-differences"}));
  return cat;
}

Scenario builtin_scenario(const std::string& name) {
  for (Scenario& s : list_builtin_scenarios()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown built-in scenario: " + name);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j = json::parse(in);

  Scenario s;
  s.name = j.at("name").get<std::string>();
  if (j.contains("game")) {
    if (j["game"].is_string()) {
      s.game_source = j["game"].get<std::string>();
    } else {
      s.game_source = "file:" + j["game"].at("file").get<std::string>();
    }
  }
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "controlled") {
      s.mode = SimMode::kControlled;
    } else if (m == "uncontrolled") {
      s.mode = SimMode::kUncontrolled;
    } else {
      throw std::invalid_argument("scenario " + s.name + ": unknown mode '" + m + "'");
    }
  }
  s.sigma = j.value("sigma", 0.0);
  s.seed = j.value("seed", uint64_t{0});
  if (j.contains("gains")) {
    if (j["gains"].is_number()) {
      s.gains = {j["gains"].get<double>()};
    } else {
      s.gains = j["gains"].get<std::vector<double>>();
    }
  }
  s.dt = j.value("dt", 1e-3);
  s.t_final = j.value("t_final", s.mode == SimMode::kControlled ? 40.0 : 200.0);
  if (j.contains("initial")) {
    std::vector<double> init = j["initial"].at("x").get<std::vector<double>>();
    for (double v : j["initial"].at("y").get<std::vector<double>>()) init.push_back(v);
    s.initial = std::move(init);
  }
  if (j.contains("outputs")) {
    s.outputs = j["outputs"].get<std::vector<std::string>>();
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["game"] = s.game_source;
  j["mode"] = mode_name(s.mode);
  j["sigma"] = s.sigma;
  j["seed"] = s.seed;
  if (!s.gains.empty()) j["gains"] = s.gains;
  j["dt"] = s.dt;
  j["t_final"] = s.t_final;
  if (s.initial) {
    const size_t n = s.initial->size() / 2;
    j["initial"]["x"] = std::vector<double>(s.initial->begin(), s.initial->begin() + n);
    j["initial"]["y"] = std::vector<double>(s.initial->begin() + n, s.initial->end());
  }
  j["outputs"] = s.outputs;
  return j.dump(2);
}

RunManifest run_scenario(const Scenario& scenario, const std::string& out_dir) {
  try {
    PayoffMatrix a = scenario.game_source == "penalty-shootout"
                         ? penalty_shootout_matrix()
                         : PayoffMatrix::load_file(scenario.game_source.starts_with("file:")
                                                       ? scenario.game_source.substr(5)
                                                       : scenario.game_source);
    const ZeroSumGame game = build_zero_sum(a);
    const NashPoint nash = solve_interior_nash(game);

    SimConfig config;
    config.mode = scenario.mode;
    config.dt = scenario.dt;
    config.t_final = scenario.t_final;
    config.target = nash;
    config.gains = resolve_gains(scenario, game.size());
    if (scenario.initial) {
      const size_t n = static_cast<size_t>(game.size());
      if (scenario.initial->size() != 2 * n) {
        throw std::invalid_argument("explicit initial state has wrong dimension");
      }
      config.initial.t = 0.0;
      config.initial.x = project_to_simplex(
          std::vector<double>(scenario.initial->begin(), scenario.initial->begin() + n), 1e-9).probs();
      config.initial.y = project_to_simplex(
          std::vector<double>(scenario.initial->begin() + n, scenario.initial->end()), 1e-9).probs();
    } else {
      config.initial = perturb_equilibrium(nash, scenario.sigma, scenario.seed);
    }

    Trajectory traj = simulate(game, config);
    traj = annotate_trajectory(game, nash, config.gains, traj);

    std::filesystem::create_directories(out_dir);
    RunManifest manifest;
    manifest.scenario_name = scenario.name;
    manifest.config_echo = scenario_to_json(scenario);
    manifest.nash = nash;
    for (const std::string& kind : scenario.outputs) {
      OutputRecord rec;
      rec.kind = kind;
      if (kind == "csv") {
        rec.path = out_dir + "/" + scenario.name + ".csv";
        rec.digest = emit_csv(traj, rec.path);
      } else {
        const PlotKind pk = plot_kind_from_string(kind);
        rec.path = out_dir + "/" + scenario.name + "_" + kind + ".svg";
        rec.digest = emit_plot(traj, pk, scenario.name + " (" + mode_name(scenario.mode) + ")",
                               rec.path);
      }
      manifest.outputs.push_back(std::move(rec));
    }
    return manifest;
  } catch (const std::exception& e) {
    throw std::runtime_error("scenario '" + scenario.name + "' failed: " + e.what());
  }
}

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["scenario"] = m.scenario_name;
  j["config"] = json::parse(m.config_echo);
  j["nash"]["x_star"] = m.nash.x_star.probs();
  j["nash"]["y_star"] = m.nash.y_star.probs();
  j["nash"]["value"] = m.nash.value;
  for (const OutputRecord& rec : m.outputs) {
    j["outputs"].push_back({{"kind", rec.kind}, {"path", rec.path}, {"digest", rec.digest}});
  }
  return j.dump(2);
}

}  // namespace repligame
