#include "repligame/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "repligame/rng.hpp"

namespace repligame {

namespace {

std::vector<double> mat_vec(const PayoffMatrix& m, const std::vector<double>& v) {
  if (m.size() != static_cast<int>(v.size())) {
    throw std::invalid_argument("dynamics: dimension mismatch between game and state");
  }
  const int n = m.size();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += m.at(i, j) * v[static_cast<size_t>(j)];
    }
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_finite(const std::vector<double>& v, double t) {
  for (double e : v) {
    if (!std::isfinite(e)) {
      throw std::runtime_error("integration error: non-finite derivative at t = " +
                               std::to_string(t));
    }
  }
}

}  // namespace

ControllerGains::ControllerGains(std::vector<double> row_gains, std::vector<double> col_gains)
    : k(std::move(row_gains)), c(std::move(col_gains)) {
  if (k.empty() || k.size() != c.size()) {
    throw std::invalid_argument("ControllerGains: gain vectors must be nonempty and equal-sized");
  }
  for (double g : k) {
    if (!(g > 0.0)) throw std::invalid_argument("ControllerGains: row gains must be > 0");
  }
  for (double g : c) {
    if (!(g > 0.0)) throw std::invalid_argument("ControllerGains: column gains must be > 0");
  }
}

ControllerGains ControllerGains::uniform(int n, double gain) {
  return ControllerGains(std::vector<double>(static_cast<size_t>(n), gain),
                         std::vector<double>(static_cast<size_t>(n), gain));
}

Derivative replicator_field(const ZeroSumGame& game, const std::vector<double>& x,
                            const std::vector<double>& y) {
  const std::vector<double> ay = mat_vec(game.a(), y);
  const std::vector<double> bx = mat_vec(game.b(), x);
  const double avg_row = dot(x, ay);
  const double avg_col = dot(y, bx);
  const size_t n = x.size();
  std::vector<double> dx(n), dy(n);
  for (size_t i = 0; i < n; ++i) {
    dx[i] = x[i] * (ay[i] - avg_row);
    dy[i] = y[i] * (bx[i] - avg_col);
  }
  return {std::move(dx), std::move(dy)};
}

Derivative control_inputs(const ZeroSumGame& game, const JointState& state,
                          const NashPoint& target, const ControllerGains& gains) {
  if (gains.k.size() != state.x.size()) {
    throw std::invalid_argument("control_inputs: gain dimension mismatch");
  }
  auto [dx, dy] = replicator_field(game, state.x, state.y);
  const size_t n = state.x.size();
  std::vector<double> u(n), v(n);
  for (size_t i = 0; i < n; ++i) {
    u[i] = -dx[i] - gains.k[i] * (state.x[i] - target.x_star[static_cast<int>(i)]);
    v[i] = -dy[i] - gains.c[i] * (state.y[i] - target.y_star[static_cast<int>(i)]);
  }
  return {std::move(u), std::move(v)};
}

Derivative controlled_field(const ZeroSumGame& game, const JointState& state,
                            const NashPoint& target, const ControllerGains& gains) {
  auto [dx, dy] = replicator_field(game, state.x, state.y);
  auto [u, v] = control_inputs(game, state, target, gains);
  const size_t n = dx.size();
  for (size_t i = 0; i < n; ++i) {
    dx[i] += u[i];
    dy[i] += v[i];
  }
  return {std::move(dx), std::move(dy)};
}

JointState rk4_step(const FieldFn& field, const JointState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
  const size_t n = state.x.size();

  auto eval = [&](const JointState& s) {
    Derivative d = field(s);
    check_finite(d.first, s.t);
    check_finite(d.second, s.t);
    return d;
  };
  auto advance = [&](const JointState& s, const Derivative& d, double h) {
    JointState out;
    out.t = state.t + h;
    out.x.resize(n);
    out.y.resize(n);
    for (size_t i = 0; i < n; ++i) {
      out.x[i] = s.x[i] + h * d.first[i];
      out.y[i] = s.y[i] + h * d.second[i];
    }
    return out;
  };

  const Derivative k1 = eval(state);
  const Derivative k2 = eval(advance(state, k1, dt / 2.0));
  const Derivative k3 = eval(advance(state, k2, dt / 2.0));
  const Derivative k4 = eval(advance(state, k3, dt));

  JointState next;
  next.t = state.t + dt;
  next.x.resize(n);
  next.y.resize(n);
  for (size_t i = 0; i < n; ++i) {
    next.x[i] = state.x[i] + dt / 6.0 * (k1.first[i] + 2.0 * k2.first[i] +
                                         2.0 * k3.first[i] + k4.first[i]);
    next.y[i] = state.y[i] + dt / 6.0 * (k1.second[i] + 2.0 * k2.second[i] +
                                         2.0 * k3.second[i] + k4.second[i]);
  }
  return next;
}

MixedStrategy project_to_simplex(const std::vector<double>& raw, double epsilon) {
  const size_t n = raw.size();
  if (n < 2) throw std::invalid_argument("project_to_simplex: need at least 2 components");
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / static_cast<double>(n))) {
    throw std::invalid_argument("project_to_simplex: epsilon must lie in (0, 1/n)");
  }
  bool any_positive = false;
  for (double v : raw) {
    if (!std::isfinite(v)) throw std::invalid_argument("project_to_simplex: non-finite input");
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive) {
    throw std::invalid_argument("project_to_simplex: degenerate input, no positive component");
  }
  std::vector<double> clipped(n);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    clipped[i] = std::max(raw[i], epsilon);
    sum += clipped[i];
  }
  for (double& v : clipped) v /= sum;
  return MixedStrategy(std::move(clipped));
}

JointState perturb_equilibrium(const NashPoint& target, double sigma, uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("perturb_equilibrium: sigma must be >= 0");
  const int n = target.x_star.size();
  JointState out;
  out.t = 0.0;
  if (sigma == 0.0) {
    out.x = target.x_star.probs();
    out.y = target.y_star.probs();
    return out;
  }
  Rng rng(seed);
  std::vector<double> xr(static_cast<size_t>(n)), yr(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) xr[static_cast<size_t>(i)] = target.x_star[i] + sigma * rng.next_gaussian();
  for (int j = 0; j < n; ++j) yr[static_cast<size_t>(j)] = target.y_star[j] + sigma * rng.next_gaussian();
  out.x = project_to_simplex(xr, 1e-9).probs();
  out.y = project_to_simplex(yr, 1e-9).probs();
  return out;
}

Trajectory simulate(const ZeroSumGame& game, const SimConfig& config) {
  if (!(config.dt > 0.0) || !(config.t_final > 0.0) || config.dt > config.t_final) {
    throw std::invalid_argument("simulate: need 0 < dt <= t_final");
  }
  if (config.mode == SimMode::kControlled && !config.gains.has_value()) {
    throw std::invalid_argument("simulate: controlled mode requires gains");
  }
  if (static_cast<int>(config.initial.x.size()) != game.size() ||
      static_cast<int>(config.initial.y.size()) != game.size()) {
    throw std::invalid_argument("simulate: initial state dimension mismatch");
  }

  FieldFn field;
  if (config.mode == SimMode::kControlled) {
    const ControllerGains gains = *config.gains;
    const NashPoint target = config.target;
    field = [&game, gains, target](const JointState& s) {
      return controlled_field(game, s, target, gains);
    };
  } else {
    field = [&game](const JointState& s) { return replicator_field(game, s.x, s.y); };
  }

  const long steps = std::lround(config.t_final / config.dt);
  Trajectory traj;
  traj.dt = config.dt;
  traj.samples.reserve(static_cast<size_t>(steps) + 1);

  JointState state = config.initial;
  state.t = 0.0;
  traj.samples.push_back(state);
  for (long i = 1; i <= steps; ++i) {
    state = rk4_step(field, state, config.dt);
    state.x = project_to_simplex(state.x, config.simplex_epsilon).probs();
    state.y = project_to_simplex(state.y, config.simplex_epsilon).probs();
    state.t = static_cast<double>(i) * config.dt;  // uniform stamps, no drift
    traj.samples.push_back(state);
  }
  return traj;
}

}  // namespace repligame
