#pragma once

#include <cstddef>
#include <vector>

#include "coagkit/grid.hpp"
#include "coagkit/kernel.hpp"
#include "coagkit/quadrature.hpp"

namespace coagkit {

// Closed-form benchmark solutions of the coagulation equation.
//
// Constant kernel:        f(t,x) = (2/(2+t))^2 exp(-2x/(2+t))
// Multiplicative kernel:  f(t,x) = exp(-T(t) x) I_1(2 x sqrt(t)) / (x^2 sqrt(t))
//                         with T(t) = 1+t for t <= 1, 2 sqrt(t) otherwise,
//                         and f(0,x) = exp(-x)/x in the t -> 0 limit.
class AnalyticSolution {
 public:
  explicit AnalyticSolution(KernelKind kernel_kind);

  KernelKind kernel_kind() const { return kind_; }

  // Size distribution f(t, x). The multiplicative solution requires x > 0.
  double eval_f(double t, double x) const;

  // Volume distribution g(t, x) = x f(t, x).
  double eval_g(double t, double x) const;

  // Mean of f(t, .) over element e: (1/dx) * integral over [x_e, x_{e+1}].
  // Closed form for the constant kernel, adaptive quadrature otherwise.
  double element_average_f(const Grid& grid, std::size_t e, double t,
                           const QuadratureSpec& quad = {}) const;

  // Mean of g(t, .) over element e.
  double element_average_g(const Grid& grid, std::size_t e, double t,
                           const QuadratureSpec& quad = {}) const;

  // All element averages at once.
  std::vector<double> element_averages_f(const Grid& grid, double t,
                                         const QuadratureSpec& quad = {}) const;
  std::vector<double> element_averages_g(const Grid& grid, double t,
                                         const QuadratureSpec& quad = {}) const;

 private:
  KernelKind kind_;
};

// T(t) from the multiplicative-kernel solution; both branches meet at t = 1.
double gel_time_factor(double t);

}  // namespace coagkit
