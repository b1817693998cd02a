#include <doctest.h>

#include <cmath>
#include <memory>

#include "coagkit/analytic.hpp"
#include "coagkit/diagnostics.hpp"
#include "coagkit/errors.hpp"
#include "coagkit/fem.hpp"
#include "coagkit/flfm.hpp"
#include "coagkit/timestep.hpp"
#include "test_helpers.hpp"

using namespace coagkit;

TEST_CASE("linear test equation") {
  IntegratorSpec spec;
  spec.sample_times = {0.5, 1.0};
  auto traj = integrate_adaptive(
      [](double, const std::vector<double>& y, std::vector<double>& dydt) {
        dydt[0] = -y[0];
      },
      {1.0}, 0.0, 1.0, spec);
  REQUIRE(traj.states.size() == 2);
  CHECK(traj.states[0][0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
  CHECK(traj.states[1][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("zero rhs keeps the state") {
  IntegratorSpec spec;
  spec.sample_times = {0.0, 0.7, 2.0};
  auto traj = integrate_adaptive(
      [](double, const std::vector<double>&, std::vector<double>& dydt) {
        dydt[0] = 0.0;
        dydt[1] = 0.0;
      },
      {3.0, -1.5}, 0.0, 2.0, spec);
  for (const auto& s : traj.states) {
    CHECK(s[0] == 3.0);
    CHECK(s[1] == -1.5);
  }
}

TEST_CASE("trajectories are deterministic") {
  auto rhs = [](double t, const std::vector<double>& y,
                std::vector<double>& dydt) {
    dydt[0] = std::sin(t) - 0.5 * y[0];
    dydt[1] = y[0] * y[1];
  };
  IntegratorSpec spec;
  spec.sample_times = {0.33, 1.5, 2.0};
  auto a = integrate_adaptive(rhs, {1.0, 0.2}, 0.0, 2.0, spec);
  auto b = integrate_adaptive(rhs, {1.0, 0.2}, 0.0, 2.0, spec);
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    CHECK(a.states[i][0] == b.states[i][0]);  // bit-identical
    CHECK(a.states[i][1] == b.states[i][1]);
  }
}

TEST_CASE("forced fixed-step order matches the design order") {
  // tolerances set so every step is accepted; max_step pins h, so the
  // observed order under h-halving is the propagating order (5)
  auto rhs = [](double, const std::vector<double>& y,
                std::vector<double>& dydt) { dydt[0] = -y[0]; };
  std::vector<std::pair<double, double>> pairs;
  for (double h : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0}) {
    IntegratorSpec spec;
    spec.rel_tol = 1e10;
    spec.abs_tol = 1e10;
    spec.initial_step = h;
    spec.max_step = h;
    spec.sample_times = {1.0};
    auto traj = integrate_adaptive(rhs, {1.0}, 0.0, 1.0, spec);
    pairs.emplace_back(h, std::abs(traj.states[0][0] - std::exp(-1.0)));
  }
  const double slope = estimate_order(pairs);
  CHECK(slope > 4.3);
  CHECK(slope < 5.7);
}

TEST_CASE("integrator failure carries the last state") {
  // blow-up equation reaches infinity before t = 2
  auto rhs = [](double, const std::vector<double>& y,
                std::vector<double>& dydt) { dydt[0] = y[0] * y[0]; };
  IntegratorSpec spec;
  spec.sample_times = {};
  try {
    integrate_adaptive(rhs, {1.0}, 0.0, 2.0, spec);
    FAIL("expected IntegratorError");
  } catch (const IntegratorError& err) {
    CHECK(err.t_last < 2.0);
    CHECK(err.last_state.size() == 1);
    CHECK(std::isfinite(err.last_state[0]));
  }
}

TEST_CASE("input validation") {
  auto rhs = [](double, const std::vector<double>& y,
                std::vector<double>& dydt) { dydt[0] = -y[0]; };
  IntegratorSpec spec;
  CHECK_THROWS_AS(integrate_adaptive(rhs, {1.0}, 1.0, 0.5, spec), DomainError);
  spec.sample_times = {2.0};
  CHECK_THROWS_AS(integrate_adaptive(rhs, {1.0}, 0.0, 1.0, spec), DomainError);
}

TEST_CASE("fixed stepping with the identity map") {
  StepMap identity = [](const std::vector<double>& y, double, double) {
    return y;
  };
  std::vector<double> samples{0.0, 0.5, 1.0};
  auto traj = integrate_fixed(identity, {1.0, 2.0}, 0.0, 1.0, 0.25, samples);
  REQUIRE(traj.states.size() == 3);
  for (const auto& s : traj.states) {
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 2.0);
  }
  CHECK_THROWS_AS(
      integrate_fixed(identity, {1.0}, 0.0, 1.0, 0.3, samples), DomainError);
}

TEST_CASE("fixed stepping reproduces the single flfm step") {
  auto grid = std::make_shared<Grid>(1.0, 3.0, 3);
  VolumeDistribution state{grid, {1.0, 1.0}};
  auto reference = flfm_step(state, Kernel::constant(), 0.1);

  StepMap step = [&](const std::vector<double>& y, double, double dt) {
    VolumeDistribution s{grid, y};
    return flfm_step(s, Kernel::constant(), dt).values;
  };
  auto traj = integrate_fixed(step, state.values, 0.0, 0.1, 0.1, {0.1});
  REQUIRE(traj.states.size() == 1);
  CHECK(traj.states[0][0] == reference.values[0]);
  CHECK(traj.states[0][1] == reference.values[1]);
}

TEST_CASE("halving the default flfm dt moves the t=3 error under 1%") {
  // fixes the default dt used by the fixed-step driver on the constant-kernel
  // study; both runs measure the grid-norm error against the analytic
  // averages at t = 3
  const std::size_t n = 100;
  auto grid = std::make_shared<Grid>(1e-3, 50.0, n);
  AnalyticSolution sol(KernelKind::Constant);
  Kernel kernel = Kernel::constant();
  auto g1 = sol.element_averages_g(*grid, 1.0);

  auto run_error = [&](double dt) {
    StepMap step = [&](const std::vector<double>& y, double, double h) {
      VolumeDistribution s{grid, y};
      return flfm_step(s, kernel, h).values;
    };
    auto traj = integrate_fixed(step, g1, 1.0, 3.0, dt, {3.0});
    auto ref = sol.element_averages_g(*grid, 3.0);
    return grid_error_norm(traj.states[0], ref, grid->dx());
  };

  const double e1 = run_error(1e-3);   // the default recorded in the configs
  const double e2 = run_error(5e-4);
  CHECK(std::abs(e1 - e2) / e1 < 0.01);
}
