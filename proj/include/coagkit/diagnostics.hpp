#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coagkit/fem.hpp"
#include "coagkit/flfm.hpp"
#include "coagkit/grid.hpp"
#include "coagkit/kernel.hpp"
#include "coagkit/opcount.hpp"

namespace coagkit {

enum class Scheme { FEM, FLFM };

struct MomentSeries {
  std::vector<double> times;
  std::vector<double> m0;
  std::vector<double> m1;
};

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> values;  // grid-function L1 norms
};

// Discrete partial moments over [x_min, x_max], summed left to right:
//   FEM:  M0 = dx sum f_e            M1 = (1/2) sum f_e (x_{e+1}^2 - x_e^2)
//   FLFM: M0 = sum g_e ln(x_{e+1}/x_e)   M1 = dx sum g_e
// order must be 0 or 1; the FLFM zeroth moment needs x_min > 0.
double partial_moment(int order, Scheme scheme,
                      const std::vector<double>& values, const Grid& grid);

// Grid-function norm dx * sum |approx_e - reference_e|.
double grid_error_norm(const std::vector<double>& approx,
                       const std::vector<double>& reference, double dx);

// Least-squares slope of log(error) against log(dx); needs >= 2 pairs with
// positive entries and at least two distinct dx values.
double estimate_order(const std::vector<std::pair<double, double>>& pairs);

// One right-hand-side / flux assembly on the deterministic sequential naive
// path with its operation tally. FEM returns the rate vector, FLFM the
// boundary fluxes (sized n_boundaries).
std::vector<double> counted_rhs(Scheme scheme, const std::vector<double>& values,
                                std::shared_ptr<const Grid> grid,
                                const Kernel& kernel, OpCount& count);

}  // namespace coagkit
