#pragma once

#include <functional>
#include <vector>

namespace coagkit {

// dydt must be resized by the caller convention: it arrives sized like y.
using RhsFunction = std::function<void(double t, const std::vector<double>& y,
                                       std::vector<double>& dydt)>;

// One-step map for fixed-step schemes: y_{k+1} = step(y_k, t_k, dt).
using StepMap = std::function<std::vector<double>(const std::vector<double>& y,
                                                  double t, double dt)>;

struct IntegratorSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 = choose automatically
  double max_step = 0.0;      // 0 = unlimited
  std::vector<double> sample_times;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

// Adaptive Dormand-Prince 5(4) integration with quartic dense output at the
// requested sample times. Every accepted step satisfies the embedded error
// estimate |err_i| <= max(abs_tol, rel_tol * |y_i|) componentwise.
// Deterministic: identical inputs give bit-identical trajectories.
// Throws IntegratorError (with the last accepted state) on step-size
// underflow or a non-finite right-hand side.
Trajectory integrate_adaptive(const RhsFunction& rhs,
                              const std::vector<double>& y0, double t0,
                              double t_end, const IntegratorSpec& spec);

// Repeated application of a one-step map with constant dt. dt must divide
// t_end - t0 up to rounding; sample times are snapped to step boundaries.
Trajectory integrate_fixed(const StepMap& step, const std::vector<double>& y0,
                           double t0, double t_end, double dt,
                           const std::vector<double>& sample_times);

}  // namespace coagkit
