#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "repligame/dynamics.hpp"

namespace repligame {

/// KL divergence from the equilibrium to the current state, summed over both
/// players. Nonnegative; zero only at the equilibrium. Requires a strictly
/// interior state.
double kl_divergence(const NashPoint& target, const JointState& state);

/// Half squared Euclidean distance to the equilibrium over both players.
double quadratic_lyapunov(const NashPoint& target, const JointState& state);

/// The uncontrolled-flow derivative diagnostic -(x* - x)^T A (y - y*).
double vdot_uncontrolled(const ZeroSumGame& game, const NashPoint& target,
                         const JointState& state);

/// -sum k_i (x_i - x*_i)^2 - sum c_j (y_j - y*_j)^2.
double vdot_controlled(const ControllerGains& gains, const NashPoint& target,
                       const JointState& state);

/// pd_row_i = (A y)_i - x^T A y, pd_col_j = (B x)_j - y^T B x.
std::pair<std::vector<double>, std::vector<double>> payoff_differences(const ZeroSumGame& game,
                                                                       const JointState& state);

/// Max over samples of |v_kl(t) - v_kl(0)|. Throws (with the offending time
/// stamp) if a sample is not strictly interior.
double conservation_check(const ZeroSumGame& game, const NashPoint& target,
                          const Trajectory& trajectory);

/// Returns a copy of the trajectory with every sample's monitor fields
/// filled. Without gains, vdot_controlled is recorded as NaN.
Trajectory annotate_trajectory(const ZeroSumGame& game, const NashPoint& target,
                               const std::optional<ControllerGains>& gains,
                               const Trajectory& trajectory);

}  // namespace repligame
