#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repligame/csv_export.hpp"
#include "repligame/equilibrium.hpp"
#include "repligame/game_core.hpp"
#include "repligame/scenario.hpp"

namespace {

repligame::PayoffMatrix load_game_matrix(const std::string& matrix_file) {
  if (matrix_file.empty()) return repligame::penalty_shootout_matrix();
  return repligame::PayoffMatrix::load_file(matrix_file);
}

void print_indifference_table(const repligame::IndifferenceReport& rep) {
  std::printf("%-10s %-5s %14s %14s %14s\n", "strategy", "side", "pure", "mixed", "delta");
  for (size_t i = 0; i < rep.row_payoffs.size(); ++i) {
    std::printf("%-10zu %-5s %14.6f %14.6f %14.3e\n", i + 1, "row", rep.row_payoffs[i],
                rep.row_payoffs[i] - rep.row_deltas[i], rep.row_deltas[i]);
  }
  for (size_t j = 0; j < rep.col_payoffs.size(); ++j) {
    std::printf("%-10zu %-5s %14.6f %14.6f %14.3e\n", j + 1, "col", rep.col_payoffs[j],
                rep.col_payoffs[j] - rep.col_deltas[j], rep.col_deltas[j]);
  }
  std::printf("max |delta| = %.3e\n", rep.max_abs_delta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replicator-dynamics experiment runner for zero-sum matrix games"};
  app.require_subcommand(1);

  std::string matrix_file;

  auto* solve = app.add_subcommand("solve", "Solve the interior Nash equilibrium and print the indifference table");
  solve->add_option("--matrix", matrix_file, "payoff matrix file (default: built-in penalty-shootout game)");

  auto* spectrum = app.add_subcommand("spectrum", "Print eigenvalues and definiteness of the symmetrized payoff matrix");
  spectrum->add_option("--matrix", matrix_file, "payoff matrix file (default: built-in penalty-shootout game)");

  std::string scenario_name;
  std::string out_dir = "out";
  std::string mode_override;
  double sigma_override = -1.0;
  double dt_override = 0.0;
  double tfinal_override = 0.0;
  double gains_override = 0.0;
  long long seed_override = -1;
  auto* run = app.add_subcommand("run", "Run a bundled scenario (or a JSON scenario file)");
  run->add_option("scenario", scenario_name, "built-in scenario name or path to a scenario JSON file")
      ->required();
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--seed", seed_override, "override the noise seed");
  run->add_option("--sigma", sigma_override, "override the noise standard deviation");
  run->add_option("--gains", gains_override, "override with a uniform gain value");
  run->add_option("--dt", dt_override, "override the integration step");
  run->add_option("--t-final", tfinal_override, "override the horizon");
  run->add_option("--mode", mode_override, "override the mode: uncontrolled|controlled");

  auto* list = app.add_subcommand("list", "List the bundled scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const repligame::ZeroSumGame game = repligame::build_zero_sum(load_game_matrix(matrix_file));
      const repligame::NashPoint nash = repligame::solve_interior_nash(game);
      std::printf("x* = [");
      for (int i = 0; i < nash.x_star.size(); ++i) {
        std::printf("%s%.6f", i ? ", " : "", nash.x_star[i]);
      }
      std::printf("]\ny* = [");
      for (int j = 0; j < nash.y_star.size(); ++j) {
        std::printf("%s%.6f", j ? ", " : "", nash.y_star[j]);
      }
      std::printf("]\nvalue = %.6f\n\n", nash.value);
      print_indifference_table(repligame::verify_nash(game, nash, 1e-9));
    } else if (spectrum->parsed()) {
      const repligame::SpectralReport rep =
          repligame::spectral_report(load_game_matrix(matrix_file));
      std::printf("eigenvalues of symmetrized matrix:");
      for (double e : rep.eigenvalues) std::printf(" %.6f", e);
      std::printf("\ndefiniteness: %s\n", repligame::to_string(rep.definiteness).c_str());
    } else if (run->parsed()) {
      repligame::Scenario scenario;
      if (scenario_name.ends_with(".json")) {
        scenario = repligame::load_scenario_file(scenario_name);
      } else {
        scenario = repligame::builtin_scenario(scenario_name);
      }
      if (seed_override >= 0) scenario.seed = static_cast<uint64_t>(seed_override);
      if (sigma_override >= 0.0) {
        scenario.sigma = sigma_override;
        scenario.initial.reset();
      }
      if (gains_override > 0.0) scenario.gains = {gains_override};
      if (dt_override > 0.0) scenario.dt = dt_override;
      if (tfinal_override > 0.0) scenario.t_final = tfinal_override;
      if (!mode_override.empty()) {
        if (mode_override == "controlled") {
          scenario.mode = repligame::SimMode::kControlled;
          if (scenario.gains.empty()) scenario.gains = {0.5};
        } else if (mode_override == "uncontrolled") {
          scenario.mode = repligame::SimMode::kUncontrolled;
        } else {
          throw std::invalid_argument("unknown mode: " + mode_override);
        }
      }
      const repligame::RunManifest manifest = repligame::run_scenario(scenario, out_dir);
      std::cout << repligame::manifest_to_json(manifest) << "\n";
    } else if (list->parsed()) {
      for (const repligame::Scenario& s : repligame::list_builtin_scenarios()) {
        std::printf("%-8s mode=%-12s sigma=%-5g seed=%-5llu dt=%g t_final=%g\n", s.name.c_str(),
                    s.mode == repligame::SimMode::kControlled ? "controlled" : "uncontrolled",
                    s.sigma, static_cast<unsigned long long>(s.seed), s.dt, s.t_final);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
