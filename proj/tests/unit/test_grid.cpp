#include <doctest.h>

#include <cmath>

#include "coagkit/errors.hpp"
#include "coagkit/grid.hpp"
#include "coagkit/quadrature.hpp"

using namespace coagkit;

TEST_CASE("uniform grid construction") {
  Grid g = make_uniform_grid(0.0, 1.0, 5);
  CHECK(g.n_boundaries() == 5);
  CHECK(g.n_elements() == 4);
  CHECK(g.dx() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.boundary(0) == 0.0);
  CHECK(g.boundary(1) == 0.25);
  CHECK(g.boundary(4) == 1.0);
  CHECK(g.midpoint(0) == 0.125);
  CHECK(g.midpoint(3) == 0.875);
}

TEST_CASE("study grid spacings") {
  // the constant-kernel study grid and the multiplicative default
  Grid c = make_uniform_grid(1e-3, 50.0, 400);
  CHECK(c.dx() == doctest::Approx(49.999 / 399.0).epsilon(1e-15));
  Grid m = make_uniform_grid(0.75, 80.0, 400);
  CHECK(m.dx() == doctest::Approx(79.25 / 399.0).epsilon(1e-15));
  CHECK(m.dx() == doctest::Approx(0.198622).epsilon(1e-5));
}

TEST_CASE("grid boundaries are uniform and reproducible") {
  Grid a = make_uniform_grid(0.75, 80.0, 1601);
  Grid b = make_uniform_grid(0.75, 80.0, 1601);
  for (std::size_t i = 0; i < a.n_boundaries(); ++i) {
    CHECK(a.boundary(i) == b.boundary(i));  // bit-for-bit
  }
  // uniform up to 8 ulp of the boundary coordinates
  for (std::size_t i = 0; i + 1 < a.n_boundaries(); ++i) {
    const double step = a.boundary(i + 1) - a.boundary(i);
    const double ulp_scale = std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(a.boundary(i + 1)), a.dx());
    CHECK(std::abs(step - a.dx()) <= 8.0 * ulp_scale);
  }
}

TEST_CASE("grid input validation") {
  CHECK_THROWS_AS(make_uniform_grid(1.0, 0.5, 10), InvalidDomainError);
  CHECK_THROWS_AS(make_uniform_grid(-1.0, 1.0, 10), InvalidDomainError);
  CHECK_THROWS_AS(make_uniform_grid(0.0, 1.0, 2), TooFewElementsError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_uniform_grid(0.0, inf, 10), InvalidDomainError);
}

TEST_CASE("restriction is cell averaging") {
  Grid fine = make_uniform_grid(0.0, 1.0, 5);    // 4 elements
  Grid coarse = make_uniform_grid(0.0, 1.0, 3);  // 2 elements
  std::vector<double> vals{1.0, 2.0, 3.0, 4.0};
  auto r = restrict_to_coarse(vals, fine, coarse);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("restriction of a constant field is the constant") {
  Grid fine = make_uniform_grid(0.5, 2.0, 13);  // 12 elements
  Grid coarse = make_uniform_grid(0.5, 2.0, 4);  // 3 elements
  std::vector<double> vals(12, 3.25);
  for (double v : restrict_to_coarse(vals, fine, coarse)) {
    CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
  }
}

TEST_CASE("restriction commutes with projection of exp(-x)") {
  // both routes equal (1/dx) * integral of exp(-x) on the coarse elements
  Grid fine = make_uniform_grid(0.0, 1.0, 9);    // 8 elements
  Grid coarse = make_uniform_grid(0.0, 1.0, 3);  // 2 elements
  auto elem_avg = [](const Grid& g, std::size_t e) {
    return (std::exp(-g.boundary(e)) - std::exp(-g.boundary(e + 1))) / g.dx();
  };
  std::vector<double> fine_proj(fine.n_elements());
  for (std::size_t e = 0; e < fine_proj.size(); ++e) {
    fine_proj[e] = elem_avg(fine, e);
  }
  auto restricted = restrict_to_coarse(fine_proj, fine, coarse);
  for (std::size_t e = 0; e < restricted.size(); ++e) {
    CHECK(restricted[e] == doctest::Approx(elem_avg(coarse, e)).epsilon(1e-12));
  }
}

TEST_CASE("restriction preserves the discrete integral") {
  Grid fine = make_uniform_grid(0.25, 4.0, 25);   // 24 elements
  Grid coarse = make_uniform_grid(0.25, 4.0, 7);  // 6 elements
  std::vector<double> vals(24);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = std::sin(0.41 * static_cast<double>(i)) + 1.5;
  }
  auto r = restrict_to_coarse(vals, fine, coarse);
  double fine_sum = 0.0, coarse_sum = 0.0;
  for (double v : vals) fine_sum += v;
  for (double v : r) coarse_sum += v;
  CHECK(coarse.dx() * coarse_sum ==
        doctest::Approx(fine.dx() * fine_sum).epsilon(1e-12));
}

TEST_CASE("restriction onto the same grid is the identity") {
  // comparing a run against itself must give zero error
  Grid g = make_uniform_grid(0.2, 3.0, 15);
  std::vector<double> vals(14);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = 0.3 * static_cast<double>(i) - 1.0;
  }
  auto r = restrict_to_coarse(vals, g, g);
  REQUIRE(r.size() == vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) CHECK(r[i] == vals[i]);
}

TEST_CASE("restriction rejects non-nested grids") {
  Grid fine = make_uniform_grid(0.0, 1.0, 8);    // 7 elements
  Grid coarse = make_uniform_grid(0.0, 1.0, 3);  // 2 elements
  std::vector<double> vals(7, 1.0);
  CHECK_THROWS_AS(restrict_to_coarse(vals, fine, coarse),
                  IncompatibleGridError);
  Grid shifted = make_uniform_grid(0.1, 1.0, 3);
  std::vector<double> vals4(4, 1.0);
  Grid fine4 = make_uniform_grid(0.0, 1.0, 5);
  CHECK_THROWS_AS(restrict_to_coarse(vals4, fine4, shifted),
                  IncompatibleGridError);
}
