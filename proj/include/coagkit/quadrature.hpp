#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "coagkit/errors.hpp"

namespace coagkit {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = 10000;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1]. All nodes are interior,
// so integrands may be singular at the interval endpoints.
struct Gk15Nodes {
  // abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight
  static constexpr double data[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529}};
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double y0 = f(c);
  if (!std::isfinite(y0)) {
    throw IntegrandError("non-finite integrand sample");
  }
  double gauss = Gk15Nodes::data[0][1] * y0;
  double kronrod = Gk15Nodes::data[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * Gk15Nodes::data[i][0];
    const double yl = f(c - dx);
    const double yr = f(c + dx);
    if (!std::isfinite(yl) || !std::isfinite(yr)) {
      throw IntegrandError("non-finite integrand sample");
    }
    const double y = yl + yr;
    gauss += Gk15Nodes::data[i][1] * y;
    kronrod += Gk15Nodes::data[i][2] * y;
  }
  gauss *= h;
  kronrod *= h;

  // |K15 - G7| overestimates the Kronrod error for smooth integrands, which
  // only costs extra subdivisions; never sharpen it below the raw difference.
  err = std::abs(kronrod - gauss);
  return kronrod;
}

struct QuadInterval {
  double a, b, value, error;
};

struct WorstErrorFirst {
  bool operator()(const QuadInterval& lhs, const QuadInterval& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;  // deterministic tie break
  }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Refines the
// interval with the largest local error estimate until
// sum(errors) <= max(abs_tol, rel_tol * |integral|) or the subdivision budget
// is exhausted (QuadratureConvergenceError, carrying the best estimate).
template <class F>
double adaptive_integrate(const F& f, double a, double b,
                          const QuadratureSpec& spec = {}) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integration interval must be finite with a < b");
  }
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) ||
      spec.max_subdivisions < 1) {
    throw DomainError("invalid quadrature spec");
  }

  double err0 = 0.0;
  double val0 = detail::gk15(f, a, b, err0);
  double total_value = val0;
  double total_error = err0;

  std::priority_queue<detail::QuadInterval, std::vector<detail::QuadInterval>,
                      detail::WorstErrorFirst>
      queue;
  queue.push({a, b, val0, err0});

  std::size_t subdivisions = 0;
  while (total_error > std::max(spec.abs_tol,
                                spec.rel_tol * std::abs(total_value))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureConvergenceError(
          "quadrature subdivision budget exhausted", total_value, total_error);
    }
    detail::QuadInterval worst = queue.top();
    queue.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval no longer splittable in floating point
      throw QuadratureConvergenceError("quadrature interval collapsed",
                                       total_value, total_error);
    }
    double el = 0.0, er = 0.0;
    const double vl = detail::gk15(f, worst.a, mid, el);
    const double vr = detail::gk15(f, mid, worst.b, er);

    total_value += (vl + vr) - worst.value;
    total_error += (el + er) - worst.error;
    queue.push({worst.a, mid, vl, el});
    queue.push({mid, worst.b, vr, er});
    ++subdivisions;
  }
  return total_value;
}

}  // namespace coagkit
