#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "coagkit/grid.hpp"
#include "coagkit/kernel.hpp"
#include "coagkit/opcount.hpp"
#include "coagkit/quadrature.hpp"

namespace coagkit {

// Piecewise-constant discontinuous-Galerkin state: per-element number
// densities f_e for e = 0..n_elements-1. The scheme does not guarantee
// positivity during evolution; negative transients are monitored by the
// experiment layer, not rejected here.
struct SizeDistribution {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
};

// L2 projection of an initial size distribution onto element averages:
// value_e = (1/dx) * integral of f0 over element e.
SizeDistribution project_initial(const std::function<double(double)>& f0,
                                 std::shared_ptr<const Grid> grid,
                                 const QuadratureSpec& quad = {});

// Aggregation-out rate vector (closed forms for the two paper kernels,
// generic quadrature for user kernels). All entries <= 0 for states >= 0.
std::vector<double> aggregation_out(const SizeDistribution& state,
                                    const Kernel& kernel,
                                    const QuadratureSpec& quad = {});

// Aggregation-in rate vector; entry 0 is always zero (no pair of elements
// can produce an aggregate smaller than x_1 + x_1).
std::vector<double> aggregation_in(const SizeDistribution& state,
                                   const Kernel& kernel,
                                   const QuadratureSpec& quad = {});

// Full semi-discrete right-hand side: aggregation_in + aggregation_out.
std::vector<double> fem_rhs(const SizeDistribution& state,
                            const Kernel& kernel,
                            const QuadratureSpec& quad = {});

// Same result bit-for-bit, assembled by the literal elementwise recurrence
// with every floating-point operation tallied. Closed-form kernels only.
std::vector<double> fem_rhs_counted(const SizeDistribution& state,
                                    const Kernel& kernel, OpCount& count);

// Generic-quadrature assembly of the same discretization; agrees with the
// closed forms to quadrature accuracy and serves user-defined kernels.
std::vector<double> fem_rhs_quadrature(const SizeDistribution& state,
                                       const Kernel& kernel,
                                       const QuadratureSpec& quad = {});

}  // namespace coagkit
