#pragma once

#include <string>
#include <vector>

#include "repligame/game_core.hpp"

namespace repligame {

/// Interior Nash equilibrium pair with the game value v = x*^T A y*.
struct NashPoint {
  MixedStrategy x_star;
  MixedStrategy y_star;
  double value = 0.0;
};

/// Per-strategy indifference data, mirroring the striker/goalkeeper payoff tables.
struct IndifferenceReport {
  std::vector<double> row_payoffs;  // (A y*)_i
  std::vector<double> col_payoffs;  // (B x*)_j
  std::vector<double> row_deltas;   // (A y*)_i - x^T A y
  std::vector<double> col_deltas;   // (B x*)_j - y^T B x
  double max_abs_delta;
  bool passed;  // max_abs_delta <= requested tolerance
};

/// Solves the indifference system [A y = v 1, 1^T y = 1] and its transpose
/// counterpart for x. Throws if the system is singular or if the solution
/// is not strictly interior.
NashPoint solve_interior_nash(const ZeroSumGame& game);

IndifferenceReport verify_nash(const ZeroSumGame& game, const NashPoint& candidate, double tol);

/// CSV with columns: strategy_index, side (row|col), pure_payoff, mixed_payoff, delta.
std::string indifference_csv(const IndifferenceReport& report);

}  // namespace repligame
