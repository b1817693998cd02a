#include "coagkit/analytic.hpp"

#include <cmath>

#include "coagkit/bessel.hpp"
#include "coagkit/errors.hpp"

namespace coagkit {

double gel_time_factor(double t) {
  return t <= 1.0 ? 1.0 + t : 2.0 * std::sqrt(t);
}

AnalyticSolution::AnalyticSolution(KernelKind kernel_kind)
    : kind_(kernel_kind) {
  if (kernel_kind == KernelKind::User) {
    throw DomainError("no analytic solution for user-defined kernels");
  }
}

double AnalyticSolution::eval_f(double t, double x) const {
  if (!(t >= 0.0) || !std::isfinite(t) || !std::isfinite(x)) {
    throw DomainError("analytic solution requires finite x and t >= 0");
  }
  if (kind_ == KernelKind::Constant) {
    if (x < 0.0) throw DomainError("constant-kernel solution requires x >= 0");
    const double a = 2.0 / (2.0 + t);
    return a * a * std::exp(-a * x);
  }
  if (!(x > 0.0)) {
    throw DomainError("multiplicative-kernel solution requires x > 0");
  }
  if (t == 0.0) return std::exp(-x) / x;
  // exp(-Tx) I1(z) = exp(z - Tx) * [exp(-z) I1(z)] with z = 2 x sqrt(t);
  // z - Tx <= 0 for all t, so the combined exponential never overflows.
  const double sqrt_t = std::sqrt(t);
  const double z = 2.0 * x * sqrt_t;
  const double expo = z - gel_time_factor(t) * x;
  return std::exp(expo) * bessel_i1_scaled(z) / (x * x * sqrt_t);
}

double AnalyticSolution::eval_g(double t, double x) const {
  return x * eval_f(t, x);
}

double AnalyticSolution::element_average_f(const Grid& grid, std::size_t e,
                                           double t,
                                           const QuadratureSpec& quad) const {
  const double a = grid.boundary(e);
  const double b = grid.boundary(e + 1);
  if (kind_ == KernelKind::Constant) {
    const double c = 2.0 / (2.0 + t);
    return (c / grid.dx()) * (std::exp(-c * a) - std::exp(-c * b));
  }
  const double v = adaptive_integrate(
      [this, t](double y) { return eval_f(t, y); }, a, b, quad);
  return v / grid.dx();
}

double AnalyticSolution::element_average_g(const Grid& grid, std::size_t e,
                                           double t,
                                           const QuadratureSpec& quad) const {
  const double a = grid.boundary(e);
  const double b = grid.boundary(e + 1);
  if (kind_ == KernelKind::Constant) {
    const double c = 2.0 / (2.0 + t);
    return ((c * a + 1.0) * std::exp(-c * a) -
            (c * b + 1.0) * std::exp(-c * b)) /
           grid.dx();
  }
  const double v = adaptive_integrate(
      [this, t](double y) { return eval_g(t, y); }, a, b, quad);
  return v / grid.dx();
}

std::vector<double> AnalyticSolution::element_averages_f(
    const Grid& grid, double t, const QuadratureSpec& quad) const {
  std::vector<double> out(grid.n_elements());
  for (std::size_t e = 0; e < out.size(); ++e) {
    out[e] = element_average_f(grid, e, t, quad);
  }
  return out;
}

std::vector<double> AnalyticSolution::element_averages_g(
    const Grid& grid, double t, const QuadratureSpec& quad) const {
  std::vector<double> out(grid.n_elements());
  for (std::size_t e = 0; e < out.size(); ++e) {
    out[e] = element_average_g(grid, e, t, quad);
  }
  return out;
}

}  // namespace coagkit
