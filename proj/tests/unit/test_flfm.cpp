#include <doctest.h>

#include <cmath>
#include <memory>

#include "coagkit/errors.hpp"
#include "coagkit/flfm.hpp"
#include "test_helpers.hpp"

using namespace coagkit;

namespace {

VolumeDistribution make_state(double x_min, double x_max, std::size_t n,
                              std::vector<double> values) {
  VolumeDistribution s;
  s.grid = std::make_shared<Grid>(x_min, x_max, n);
  s.values = std::move(values);
  return s;
}

double rel_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-30});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("initial volume distribution") {
  auto grid = std::make_shared<Grid>(0.0, 2.0, 3);
  auto state = init_volume_distribution(
      [](double x) { return std::exp(-x); }, grid);
  // integral of x exp(-x) over [0,1] = 1 - 2/e
  CHECK(state.values[0] ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-10));

  // g(0,x) = exp(-x) for the multiplicative initial condition exp(-x)/x
  auto grid2 = std::make_shared<Grid>(0.75, 80.0, 400);
  auto state2 = init_volume_distribution(
      [](double x) { return std::exp(-x) / x; }, grid2);
  const double a = grid2->boundary(0), b = grid2->boundary(1);
  CHECK(state2.values[0] ==
        doctest::Approx((std::exp(-a) - std::exp(-b)) / grid2->dx())
            .epsilon(1e-10));

  auto zero = init_volume_distribution([](double) { return 0.0; }, grid);
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("hand-evaluated constant-kernel flux") {
  auto state = make_state(1.0, 3.0, 3, {1.0, 1.0});
  auto flux = compute_flux(state, Kernel::constant(), FluxAlgorithm::Naive);
  REQUIRE(flux.values.size() == 3);
  CHECK(flux.values[0] == 0.0);
  // J_2 = ln(2/1.5) + ln(3/2) = ln 2
  CHECK(flux.values[1] ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // J_3 = ln(3/2.5) + ln(2/1.5) + ln(3/2)
  const double j3 =
      std::log(3.0 / 2.5) + std::log(2.0 / 1.5) + std::log(3.0 / 2.0);
  CHECK(flux.values[2] == doctest::Approx(j3).epsilon(1e-14));
  CHECK(j3 == doctest::Approx(0.8754687).epsilon(1e-6));
}

TEST_CASE("hand-evaluated multiplicative-kernel flux") {
  auto state = make_state(1.0, 3.0, 3, {1.0, 1.0});
  auto flux =
      compute_flux(state, Kernel::multiplicative(), FluxAlgorithm::Naive);
  // J_2 = dx g1 [x_mid(1)(x_2 - x_mid(1)) g1 + x_mid(1) dx g2] = 2.25
  CHECK(flux.values[1] == doctest::Approx(2.25).epsilon(1e-14));
}

TEST_CASE("zero state gives zero flux") {
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    auto state = make_state(0.5, 4.0, 8, std::vector<double>(7, 0.0));
    for (FluxAlgorithm alg : {FluxAlgorithm::Naive, FluxAlgorithm::SuffixSum}) {
      for (double v : compute_flux(state, k, alg).values) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("flux is zero at the left boundary and non-negative") {
  testutil::Rng rng(31);
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    for (int it = 0; it < 20; ++it) {
      auto state = make_state(0.25, 7.0, 28, rng.nonneg_vector(27));
      auto flux = compute_flux(state, k);
      CHECK(flux.values[0] == 0.0);
      for (double v : flux.values) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("flux is quadratic in the state") {
  testutil::Rng rng(37);
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    auto state = make_state(0.5, 6.0, 12, rng.nonneg_vector(11));
    auto doubled = state;
    for (double& v : doubled.values) v *= 2.0;
    auto f1 = compute_flux(state, k);
    auto f2 = compute_flux(doubled, k);
    for (std::size_t i = 0; i < f1.values.size(); ++i) {
      CHECK(f2.values[i] == doctest::Approx(4.0 * f1.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("naive and suffix-sum paths agree") {
  testutil::Rng rng(41);
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    for (std::size_t m : {6u, 23u, 50u}) {
      auto state = make_state(0.4, 0.4 + 0.2 * static_cast<double>(m), m + 1,
                              rng.nonneg_vector(m));
      auto naive = compute_flux(state, k, FluxAlgorithm::Naive);
      auto suffix = compute_flux(state, k, FluxAlgorithm::SuffixSum);
      CHECK(rel_gap(naive.values, suffix.values) < 1e-12);
    }
  }
}

TEST_CASE("closed forms match the generic quadrature flux") {
  testutil::Rng rng(43);
  QuadratureSpec spec{1e-12, 1e-14, 20000};
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    Kernel generic = Kernel::user(
        [k](double x, double y) { return k.evaluate(x, y); },
        k.homogeneity_degree());
    for (std::size_t m : {5u, 19u, 45u}) {
      auto state = make_state(0.3, 0.3 + 0.25 * static_cast<double>(m), m + 1,
                              rng.nonneg_vector(m));
      auto closed = compute_flux(state, k, FluxAlgorithm::Naive);
      auto quad = compute_flux(state, generic, FluxAlgorithm::Naive, spec);
      CHECK(rel_gap(closed.values, quad.values) < 1e-9);
    }
  }
}

TEST_CASE("counted flux matches the naive path bit for bit") {
  testutil::Rng rng(47);
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    auto state = make_state(0.6, 8.0, 38, rng.nonneg_vector(37));
    auto naive = compute_flux(state, k, FluxAlgorithm::Naive);
    OpCount count;
    auto counted = compute_flux_counted(state, k, count);
    for (std::size_t i = 0; i < naive.values.size(); ++i) {
      CHECK(naive.values[i] == counted.values[i]);  // exact
    }
    CHECK(count.total() > 0);
  }
}

TEST_CASE("constant kernel rejects x_min = 0") {
  auto state = make_state(0.0, 2.0, 5, std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(compute_flux(state, Kernel::constant()),
                  LogSingularityError);
}

TEST_CASE("one explicit step reproduces the hand example") {
  auto state = make_state(1.0, 3.0, 3, {1.0, 1.0});
  auto next = flfm_step(state, Kernel::constant(), 0.1, FluxAlgorithm::Naive);
  CHECK(next.values[0] ==
        doctest::Approx(1.0 - 0.1 * std::log(2.0)).epsilon(1e-13));
  const double j3 =
      std::log(3.0 / 2.5) + std::log(2.0 / 1.5) + std::log(3.0 / 2.0);
  CHECK(next.values[1] ==
        doctest::Approx(1.0 - 0.1 * (j3 - std::log(2.0))).epsilon(1e-12));

  // mass identity for this step: dx sum(dg) = -dt * J_N
  double mass_change = 0.0;
  for (std::size_t e = 0; e < next.values.size(); ++e) {
    mass_change += next.values[e] - state.values[e];
  }
  mass_change *= state.grid->dx();
  CHECK(mass_change == doctest::Approx(-0.1 * j3).epsilon(1e-12));

  CHECK_THROWS_AS(flfm_step(state, Kernel::constant(), 0.0), DomainError);
  CHECK_THROWS_AS(flfm_step(state, Kernel::constant(), -1.0), DomainError);
}

TEST_CASE("zero state is a fixed point of the step") {
  auto state = make_state(0.5, 4.0, 9, std::vector<double>(8, 0.0));
  auto next = flfm_step(state, Kernel::multiplicative(), 0.05);
  for (double v : next.values) CHECK(v == 0.0);
}

TEST_CASE("mass telescoping across random states") {
  testutil::Rng rng(53);
  for (Kernel k : {Kernel::constant(), Kernel::multiplicative()}) {
    for (int it = 0; it < 10; ++it) {
      auto state = make_state(0.35, 9.0, 60, rng.nonneg_vector(59));
      const double dt = 0.01;
      auto flux = compute_flux(state, k);
      auto next = flfm_step(state, k, dt);
      double mass_change = 0.0;
      for (std::size_t e = 0; e < next.values.size(); ++e) {
        mass_change += next.values[e] - state.values[e];
      }
      mass_change *= state.grid->dx();
      const double outflow = -dt * flux.values.back();
      double mass = 0.0;
      for (double v : state.values) mass += std::abs(v);
      mass *= state.grid->dx();
      CHECK(std::abs(mass_change - outflow) <=
            1e-12 * std::max(std::abs(outflow), mass));
    }
  }
}

TEST_CASE("flfm_rhs is the divided flux difference") {
  testutil::Rng rng(59);
  auto state = make_state(0.5, 5.0, 15, rng.nonneg_vector(14));
  auto flux = compute_flux(state, Kernel::constant());
  auto rhs = flfm_rhs(state, Kernel::constant());
  for (std::size_t e = 0; e < rhs.size(); ++e) {
    CHECK(rhs[e] ==
          doctest::Approx(-(flux.values[e + 1] - flux.values[e]) /
                          state.grid->dx())
              .epsilon(1e-14));
  }
}
