#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "repligame/equilibrium.hpp"
#include "repligame/game_core.hpp"

namespace repligame {

/// Joint population state at a simulation time. Samples recorded by
/// simulate() always satisfy the simplex invariants; raw integrator output
/// (before projection) may sit slightly off the simplex.
struct JointState {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

/// Per-strategy feedback gains, all strictly positive.
struct ControllerGains {
  ControllerGains(std::vector<double> row_gains, std::vector<double> col_gains);
  static ControllerGains uniform(int n, double gain);

  std::vector<double> k;  // row player
  std::vector<double> c;  // column player
};

enum class SimMode { kUncontrolled, kControlled };

struct SimConfig {
  SimMode mode = SimMode::kUncontrolled;
  double dt = 1e-3;
  double t_final = 200.0;
  std::optional<ControllerGains> gains;  // required iff controlled
  NashPoint target;
  JointState initial;
  double simplex_epsilon = 1e-9;
};

/// Monitor values attached to one trajectory sample.
struct LyapunovSample {
  double t = 0.0;
  double v_kl = 0.0;
  double v_quad = 0.0;
  double vdot_uncontrolled = 0.0;
  double vdot_controlled = 0.0;
  std::vector<double> pd_row;
  std::vector<double> pd_col;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<JointState> samples;
  std::vector<LyapunovSample> monitors;  // filled by annotate_trajectory

  bool annotated() const { return !monitors.empty() && monitors.size() == samples.size(); }
};

using Derivative = std::pair<std::vector<double>, std::vector<double>>;  // (dx, dy)
using FieldFn = std::function<Derivative(const JointState&)>;

/// dx_i = x_i ((A y)_i - x^T A y), dy_j = y_j ((B x)_j - y^T B x).
Derivative replicator_field(const ZeroSumGame& game, const std::vector<double>& x,
                            const std::vector<double>& y);

/// u_i = -x_i ((A y)_i - x^T A y) - k_i (x_i - x*_i), and symmetrically for v.
Derivative control_inputs(const ZeroSumGame& game, const JointState& state,
                          const NashPoint& target, const ControllerGains& gains);

/// replicator_field + control_inputs; algebraically -k (x - x*), -c (y - y*).
Derivative controlled_field(const ZeroSumGame& game, const JointState& state,
                            const NashPoint& target, const ControllerGains& gains);

/// Classical fourth-order Runge-Kutta update of the concatenated (x, y)
/// vector. No simplex projection inside the step.
JointState rk4_step(const FieldFn& field, const JointState& state, double dt);

/// Clips every component to >= epsilon, then renormalizes to unit sum.
MixedStrategy project_to_simplex(const std::vector<double>& raw, double epsilon);

/// Adds seeded zero-mean Gaussian noise (std sigma) to every component of
/// the equilibrium and projects back to the simplex.
JointState perturb_equilibrium(const NashPoint& target, double sigma, uint64_t seed);

Trajectory simulate(const ZeroSumGame& game, const SimConfig& config);

}  // namespace repligame
