#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "repligame/dynamics.hpp"
#include "repligame/rng.hpp"

using namespace repligame;

namespace {

ZeroSumGame bundled_game() { return build_zero_sum(penalty_shootout_matrix()); }

NashPoint bundled_nash() {
  return NashPoint{MixedStrategy({93.0 / 185.0, 78.0 / 185.0, 14.0 / 185.0}),
                   MixedStrategy({77.0 / 185.0, 51.0 / 185.0, 57.0 / 185.0}), 807.0 / 1850.0};
}

JointState figure2_state() {
  return JointState{0.0, {0.51, 0.42, 0.07}, {0.42, 0.27, 0.31}};
}

std::vector<double> random_interior(Rng& rng, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  double sum = 0.0;
  for (double& e : v) {
    e = 0.05 - std::log(rng.next_unit());
    sum += e;
  }
  for (double& e : v) e /= sum;
  return v;
}

}  // namespace

TEST_CASE("controller gains validation") {
  CHECK_NOTHROW(ControllerGains::uniform(3, 0.5));
  CHECK_THROWS(ControllerGains::uniform(3, 0.0));
  CHECK_THROWS(ControllerGains::uniform(3, -1.0));
  CHECK_THROWS(ControllerGains({0.5, 0.5}, {0.5, 0.5, 0.5}));
}

TEST_CASE("replicator_field at fixed points") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();

  auto [dx, dy] = replicator_field(game, nash.x_star.probs(), nash.y_star.probs());
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(dx[static_cast<size_t>(i)]) <= 1e-9);
    CHECK(std::abs(dy[static_cast<size_t>(i)]) <= 1e-9);
  }

  // simplex vertices are fixed points too
  auto [dxe, dye] = replicator_field(game, {1.0, 0.0, 0.0}, {0.2, 0.3, 0.5});
  for (double v : dxe) CHECK(std::abs(v) <= 1e-15);
  (void)dye;
}

TEST_CASE("replicator_field at the uniform state") {
  auto [dx, dy] = replicator_field(bundled_game(), {1.0 / 3, 1.0 / 3, 1.0 / 3},
                                   {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(std::abs(dx[0] - 7.0 / 270.0) <= 1e-12);
  CHECK(std::abs(dx[1] - (-1.0 / 54.0)) <= 1e-12);
  CHECK(std::abs(dx[2] - (-1.0 / 135.0)) <= 1e-12);
  (void)dy;
}

TEST_CASE("replicator_field is tangent to the simplex") {
  const ZeroSumGame game = bundled_game();
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    auto [dx, dy] = replicator_field(game, random_interior(rng, 3), random_interior(rng, 3));
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < 3; ++i) {
      sx += dx[static_cast<size_t>(i)];
      sy += dy[static_cast<size_t>(i)];
    }
    CHECK(std::abs(sx) <= 1e-12);
    CHECK(std::abs(sy) <= 1e-12);
  }
}

TEST_CASE("control_inputs") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  const ControllerGains gains = ControllerGains::uniform(3, 0.5);

  JointState at_target{0.0, nash.x_star.probs(), nash.y_star.probs()};
  auto [u0, v0] = control_inputs(game, at_target, nash, gains);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(u0[static_cast<size_t>(i)]) <= 1e-9);
    CHECK(std::abs(v0[static_cast<size_t>(i)]) <= 1e-9);
  }

  // definitional identity u = -dx - k (x - x*)
  const JointState s = figure2_state();
  auto [u, v] = control_inputs(game, s, nash, gains);
  auto [dx, dy] = replicator_field(game, s.x, s.y);
  for (int i = 0; i < 3; ++i) {
    const size_t k = static_cast<size_t>(i);
    CHECK(std::abs(u[k] - (-dx[k] - 0.5 * (s.x[k] - nash.x_star[i]))) <= 1e-15);
    CHECK(std::abs(v[k] - (-dy[k] - 0.5 * (s.y[k] - nash.y_star[i]))) <= 1e-15);
  }

  // frozen high-precision evaluation at the figure-2 start
  CHECK(std::abs(u[0] - (-0.00202429864864867)) <= 1e-12);
  CHECK(std::abs(u[1] - (-0.00079148918918917)) <= 1e-12);
  CHECK(std::abs(u[2] - 0.00281578783783784) <= 1e-12);
  CHECK(std::abs(v[0] - (-0.00427959189189189)) <= 1e-12);
  CHECK(std::abs(v[1] - 0.00373288783783784) <= 1e-12);
  CHECK(std::abs(v[2] - 0.00054670405405405) <= 1e-12);
}

TEST_CASE("controlled_field reduces to the linear error dynamics") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();

  JointState at_target{0.0, nash.x_star.probs(), nash.y_star.probs()};
  auto [dx0, dy0] = controlled_field(game, at_target, nash, ControllerGains::uniform(3, 0.5));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(dx0[static_cast<size_t>(i)]) <= 1e-15);
    CHECK(std::abs(dy0[static_cast<size_t>(i)]) <= 1e-15);
  }

  // displacing one component by +0.1 with gain 0.5 gives -0.05 in that slot
  JointState shifted = at_target;
  shifted.x[0] += 0.1;
  auto [dxs, dys] = controlled_field(game, shifted, nash, ControllerGains::uniform(3, 0.5));
  CHECK(std::abs(dxs[0] - (-0.05)) <= 1e-12);
  (void)dys;

  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    JointState s{0.0, random_interior(rng, 3), random_interior(rng, 3)};
    std::vector<double> k(3), c(3);
    for (double& g : k) g = 0.1 + 5.0 * rng.next_unit();
    for (double& g : c) g = 0.1 + 5.0 * rng.next_unit();
    const ControllerGains gains(k, c);
    auto [dx, dy] = controlled_field(game, s, nash, gains);
    for (int i = 0; i < 3; ++i) {
      const size_t j = static_cast<size_t>(i);
      CHECK(std::abs(dx[j] - (-k[j] * (s.x[j] - nash.x_star[i]))) <= 1e-15);
      CHECK(std::abs(dy[j] - (-c[j] * (s.y[j] - nash.y_star[i]))) <= 1e-15);
    }
  }
}

TEST_CASE("rk4_step on the exponential test system") {
  // dx/dt = -x componentwise; one step of length 0.1 from 1.0
  const FieldFn decay = [](const JointState& s) {
    std::vector<double> dx(s.x.size()), dy(s.y.size(), 0.0);
    for (size_t i = 0; i < s.x.size(); ++i) dx[i] = -s.x[i];
    return Derivative{dx, dy};
  };
  const JointState s0{0.0, {1.0, 1.0}, {0.5, 0.5}};
  const JointState s1 = rk4_step(decay, s0, 0.1);
  CHECK(std::abs(s1.x[0] - 0.9048375) <= 1e-12);                // RK4 polynomial value
  CHECK(std::abs(s1.x[0] - std::exp(-0.1)) <= 1e-7);            // analytic within local error
  CHECK(std::abs(s1.x[0] - std::exp(-0.1)) >= 1e-9);            // but not exact
  CHECK(s1.y[0] == 0.5);
  CHECK(s1.t == doctest::Approx(0.1));
}

TEST_CASE("rk4_step leaves the state alone for a zero field") {
  const FieldFn zero = [](const JointState& s) {
    return Derivative{std::vector<double>(s.x.size(), 0.0), std::vector<double>(s.y.size(), 0.0)};
  };
  const JointState s0{1.5, {0.3, 0.7}, {0.4, 0.6}};
  const JointState s1 = rk4_step(zero, s0, 0.25);
  CHECK(s1.x == s0.x);
  CHECK(s1.y == s0.y);
  CHECK(s1.t == doctest::Approx(1.75));
}

TEST_CASE("rk4_step rejects bad input") {
  const FieldFn bad = [](const JointState& s) {
    return Derivative{std::vector<double>(s.x.size(), std::nan("")),
                      std::vector<double>(s.y.size(), 0.0)};
  };
  const JointState s0{0.0, {0.5, 0.5}, {0.5, 0.5}};
  CHECK_THROWS_AS(rk4_step(bad, s0, 0.1), std::runtime_error);
  const FieldFn zero = [](const JointState& s) {
    return Derivative{std::vector<double>(s.x.size(), 0.0), std::vector<double>(s.y.size(), 0.0)};
  };
  CHECK_THROWS_AS(rk4_step(zero, s0, 0.0), std::invalid_argument);
}

TEST_CASE("one controlled rk4 step matches the stability polynomial") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  const double k = 0.5, dt = 0.1;
  const ControllerGains gains = ControllerGains::uniform(3, k);
  const FieldFn field = [&](const JointState& s) { return controlled_field(game, s, nash, gains); };

  const JointState s0 = figure2_state();
  const JointState s1 = rk4_step(field, s0, dt);
  const double h = k * dt;
  const double r = 1.0 - h + h * h / 2.0 - h * h * h / 6.0 + h * h * h * h / 24.0;
  for (int i = 0; i < 3; ++i) {
    const size_t j = static_cast<size_t>(i);
    CHECK(std::abs(s1.x[j] - (nash.x_star[i] + (s0.x[j] - nash.x_star[i]) * r)) <= 1e-12);
    CHECK(std::abs(s1.y[j] - (nash.y_star[i] + (s0.y[j] - nash.y_star[i]) * r)) <= 1e-12);
  }
}

TEST_CASE("equal gains preserve the simplex sum before projection") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  const ControllerGains gains = ControllerGains::uniform(3, 0.5);
  const FieldFn field = [&](const JointState& s) { return controlled_field(game, s, nash, gains); };

  JointState s = figure2_state();
  for (int step = 0; step < 100; ++step) {
    s = rk4_step(field, s, 1e-2);
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < 3; ++i) {
      sx += s.x[static_cast<size_t>(i)];
      sy += s.y[static_cast<size_t>(i)];
    }
    CHECK(std::abs(sx - 1.0) <= 1e-12);
    CHECK(std::abs(sy - 1.0) <= 1e-12);
  }
}

TEST_CASE("project_to_simplex") {
  const MixedStrategy renorm = project_to_simplex({0.5, 0.5, 0.5}, 1e-9);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(renorm[i] - 1.0 / 3.0) <= 1e-15);

  const MixedStrategy clipped = project_to_simplex({-0.1, 0.6, 0.5}, 1e-9);
  const double denom = 1.1 + 1e-9;
  CHECK(std::abs(clipped[0] - 1e-9 / denom) <= 1e-18);
  CHECK(std::abs(clipped[1] - 0.6 / denom) <= 1e-12);
  CHECK(std::abs(clipped[2] - 0.5 / denom) <= 1e-12);

  const MixedStrategy interior = project_to_simplex({0.2, 0.3, 0.5}, 1e-9);
  CHECK(std::abs(interior[0] - 0.2) <= 1e-15);
  CHECK(std::abs(interior[1] - 0.3) <= 1e-15);
  CHECK(std::abs(interior[2] - 0.5) <= 1e-15);

  CHECK_THROWS(project_to_simplex({-1.0, -2.0, 0.0}, 1e-9));
  CHECK_THROWS(project_to_simplex({0.5, 0.5}, 0.0));
  CHECK_THROWS(project_to_simplex({0.5, 0.5}, 0.6));
}

TEST_CASE("perturb_equilibrium") {
  const NashPoint nash = bundled_nash();

  const JointState exact = perturb_equilibrium(nash, 0.0, 12345);
  for (int i = 0; i < 3; ++i) {
    CHECK(exact.x[static_cast<size_t>(i)] == nash.x_star[i]);
    CHECK(exact.y[static_cast<size_t>(i)] == nash.y_star[i]);
  }

  const JointState a = perturb_equilibrium(nash, 0.02, 42);
  const JointState b = perturb_equilibrium(nash, 0.02, 42);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);

  const JointState c = perturb_equilibrium(nash, 0.02, 43);
  CHECK(a.x != c.x);

  auto l1 = [&](const JointState& s) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      d += std::abs(s.x[static_cast<size_t>(i)] - nash.x_star[i]);
      d += std::abs(s.y[static_cast<size_t>(i)] - nash.y_star[i]);
    }
    return d;
  };
  CHECK(l1(a) > 0.0);
  CHECK(l1(a) < 0.5);  // O(sigma) for sigma = 0.02
  const JointState big = perturb_equilibrium(nash, 0.2, 42);
  CHECK(l1(big) > l1(a));

  CHECK_THROWS(perturb_equilibrium(nash, -0.1, 0));
}

TEST_CASE("simulate holds the equilibrium fixed") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  SimConfig config;
  config.mode = SimMode::kUncontrolled;
  config.dt = 1e-2;
  config.t_final = 20.0;
  config.target = nash;
  config.initial = JointState{0.0, nash.x_star.probs(), nash.y_star.probs()};
  const Trajectory traj = simulate(game, config);
  REQUIRE(traj.samples.size() == 2001);
  for (const JointState& s : traj.samples) {
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(s.x[static_cast<size_t>(i)] - nash.x_star[i]) <= 1e-9);
      CHECK(std::abs(s.y[static_cast<size_t>(i)] - nash.y_star[i]) <= 1e-9);
    }
  }
}

TEST_CASE("controlled simulation follows the analytic exponential decay") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  const double k = 0.5;
  SimConfig config;
  config.mode = SimMode::kControlled;
  config.dt = 1e-2;
  config.t_final = 5.0;
  config.gains = ControllerGains::uniform(3, k);
  config.target = nash;
  config.initial = figure2_state();
  const Trajectory traj = simulate(game, config);
  for (const JointState& s : traj.samples) {
    const double decay = std::exp(-k * s.t);
    for (int i = 0; i < 3; ++i) {
      const size_t j = static_cast<size_t>(i);
      CHECK(std::abs(s.x[j] - (nash.x_star[i] + (config.initial.x[j] - nash.x_star[i]) * decay)) <= 1e-8);
      CHECK(std::abs(s.y[j] - (nash.y_star[i] + (config.initial.y[j] - nash.y_star[i]) * decay)) <= 1e-8);
    }
  }
}

TEST_CASE("controlled simulation converges to the equilibrium") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  SimConfig config;
  config.mode = SimMode::kControlled;
  config.dt = 1e-3;
  config.t_final = 40.0;
  config.gains = ControllerGains::uniform(3, 0.5);
  config.target = nash;
  config.initial = figure2_state();
  const Trajectory traj = simulate(game, config);
  const JointState& last = traj.samples.back();
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(last.x[static_cast<size_t>(i)] - nash.x_star[i]) <= 1e-6);
    CHECK(std::abs(last.y[static_cast<size_t>(i)] - nash.y_star[i]) <= 1e-6);
  }
}

TEST_CASE("uncontrolled dynamics do not converge to the equilibrium") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  SimConfig config;
  config.mode = SimMode::kUncontrolled;
  config.dt = 1e-3;
  config.t_final = 200.0;
  config.target = nash;

  auto l1_to_nash = [&](const JointState& s) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      d += std::abs(s.x[static_cast<size_t>(i)] - nash.x_star[i]);
      d += std::abs(s.y[static_cast<size_t>(i)] - nash.y_star[i]);
    }
    return d;
  };

  for (const JointState& start :
       {figure2_state(), perturb_equilibrium(nash, 0.02, 101), perturb_equilibrium(nash, 0.2, 201)}) {
    config.initial = start;
    const Trajectory traj = simulate(game, config);
    CHECK(l1_to_nash(traj.samples.back()) > 0.1 * l1_to_nash(start));
  }
}

TEST_CASE("integrator order against the analytic controlled solution") {
  // gains large enough that truncation error dominates roundoff at these steps
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  const double k = 20.0;

  auto max_dev = [&](double dt) {
    SimConfig config;
    config.mode = SimMode::kControlled;
    config.dt = dt;
    config.t_final = 5.0;
    config.gains = ControllerGains::uniform(3, k);
    config.target = nash;
    config.initial = figure2_state();
    const Trajectory traj = simulate(game, config);
    double dev = 0.0;
    for (const JointState& s : traj.samples) {
      const double decay = std::exp(-k * s.t);
      for (int i = 0; i < 3; ++i) {
        const size_t j = static_cast<size_t>(i);
        dev = std::max(dev, std::abs(s.x[j] - (nash.x_star[i] + (config.initial.x[j] - nash.x_star[i]) * decay)));
        dev = std::max(dev, std::abs(s.y[j] - (nash.y_star[i] + (config.initial.y[j] - nash.y_star[i]) * decay)));
      }
    }
    return dev;
  };

  const double ratio = max_dev(2e-3) / max_dev(1e-3);
  CHECK(ratio >= 10.0);
  CHECK(ratio <= 24.0);
}

TEST_CASE("simulate config validation") {
  const ZeroSumGame game = bundled_game();
  const NashPoint nash = bundled_nash();
  SimConfig config;
  config.target = nash;
  config.initial = JointState{0.0, nash.x_star.probs(), nash.y_star.probs()};

  config.dt = 0.0;
  CHECK_THROWS(simulate(game, config));
  config.dt = 1e-3;
  config.t_final = 1e-4;
  CHECK_THROWS(simulate(game, config));
  config.t_final = 1.0;
  config.mode = SimMode::kControlled;  // no gains
  CHECK_THROWS(simulate(game, config));
}
