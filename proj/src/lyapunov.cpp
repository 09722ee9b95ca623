#include "repligame/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace repligame {

namespace {

double kl_one_side(const MixedStrategy& ref, const std::vector<double>& cur, double t) {
  double v = 0.0;
  for (int i = 0; i < ref.size(); ++i) {
    const double c = cur[static_cast<size_t>(i)];
    if (!(c > 0.0)) {
      throw std::domain_error("kl_divergence: non-interior state at t = " + std::to_string(t));
    }
    v += ref[i] * std::log(ref[i] / c);
  }
  return v;
}

}  // namespace

double kl_divergence(const NashPoint& target, const JointState& state) {
  return kl_one_side(target.x_star, state.x, state.t) +
         kl_one_side(target.y_star, state.y, state.t);
}

double quadratic_lyapunov(const NashPoint& target, const JointState& state) {
  double v = 0.0;
  for (size_t i = 0; i < state.x.size(); ++i) {
    const double dx = state.x[i] - target.x_star[static_cast<int>(i)];
    const double dy = state.y[i] - target.y_star[static_cast<int>(i)];
    v += 0.5 * dx * dx + 0.5 * dy * dy;
  }
  return v;
}

double vdot_uncontrolled(const ZeroSumGame& game, const NashPoint& target,
                         const JointState& state) {
  if (static_cast<int>(state.x.size()) != game.size()) {
    throw std::invalid_argument("vdot_uncontrolled: dimension mismatch");
  }
  const int n = game.size();
  double v = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      v += (target.x_star[i] - state.x[static_cast<size_t>(i)]) * game.a().at(i, j) *
           (state.y[static_cast<size_t>(j)] - target.y_star[j]);
    }
  }
  return -v;
}

double vdot_controlled(const ControllerGains& gains, const NashPoint& target,
                       const JointState& state) {
  double v = 0.0;
  for (size_t i = 0; i < state.x.size(); ++i) {
    const double dx = state.x[i] - target.x_star[static_cast<int>(i)];
    const double dy = state.y[i] - target.y_star[static_cast<int>(i)];
    v -= gains.k[i] * dx * dx + gains.c[i] * dy * dy;
  }
  return v;
}

std::pair<std::vector<double>, std::vector<double>> payoff_differences(const ZeroSumGame& game,
                                                                       const JointState& state) {
  if (static_cast<int>(state.x.size()) != game.size()) {
    throw std::invalid_argument("payoff_differences: dimension mismatch");
  }
  const int n = game.size();
  std::vector<double> ay(static_cast<size_t>(n), 0.0), bx(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ay[static_cast<size_t>(i)] += game.a().at(i, j) * state.y[static_cast<size_t>(j)];
      bx[static_cast<size_t>(i)] += game.b().at(i, j) * state.x[static_cast<size_t>(j)];
    }
  }
  double avg_row = 0.0, avg_col = 0.0;
  for (int i = 0; i < n; ++i) {
    avg_row += state.x[static_cast<size_t>(i)] * ay[static_cast<size_t>(i)];
    avg_col += state.y[static_cast<size_t>(i)] * bx[static_cast<size_t>(i)];
  }
  std::vector<double> pd_row(static_cast<size_t>(n)), pd_col(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    pd_row[static_cast<size_t>(i)] = ay[static_cast<size_t>(i)] - avg_row;
    pd_col[static_cast<size_t>(i)] = bx[static_cast<size_t>(i)] - avg_col;
  }
  return {std::move(pd_row), std::move(pd_col)};
}

double conservation_check(const ZeroSumGame& game, const NashPoint& target,
                          const Trajectory& trajectory) {
  (void)game;
  if (trajectory.samples.empty()) {
    throw std::invalid_argument("conservation_check: empty trajectory");
  }
  const double v0 = kl_divergence(target, trajectory.samples.front());
  double max_drift = 0.0;
  for (const JointState& s : trajectory.samples) {
    max_drift = std::max(max_drift, std::abs(kl_divergence(target, s) - v0));
  }
  return max_drift;
}

Trajectory annotate_trajectory(const ZeroSumGame& game, const NashPoint& target,
                               const std::optional<ControllerGains>& gains,
                               const Trajectory& trajectory) {
  Trajectory out = trajectory;
  out.monitors.clear();
  out.monitors.reserve(out.samples.size());
  for (size_t idx = 0; idx < out.samples.size(); ++idx) {
    const JointState& s = out.samples[idx];
    LyapunovSample mon;
    mon.t = s.t;
    try {
      mon.v_kl = kl_divergence(target, s);
    } catch (const std::domain_error& e) {
      throw std::domain_error(std::string(e.what()) + " (sample " + std::to_string(idx) + ")");
    }
    mon.v_quad = quadratic_lyapunov(target, s);
    mon.vdot_uncontrolled = vdot_uncontrolled(game, target, s);
    mon.vdot_controlled = gains ? vdot_controlled(*gains, target, s)
                                : std::numeric_limits<double>::quiet_NaN();
    auto [pd_row, pd_col] = payoff_differences(game, s);
    mon.pd_row = std::move(pd_row);
    mon.pd_col = std::move(pd_col);
    out.monitors.push_back(std::move(mon));
  }
  return out;
}

}  // namespace repligame
