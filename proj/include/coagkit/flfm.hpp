#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "coagkit/grid.hpp"
#include "coagkit/kernel.hpp"
#include "coagkit/opcount.hpp"
#include "coagkit/quadrature.hpp"

namespace coagkit {

// Finite-volume state: per-element volume densities g_e.
struct VolumeDistribution {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
};

// Mass flux J_b across each grid boundary b = 0..n_boundaries-1.
// J_0 is always zero; non-negative states give non-negative fluxes.
struct FluxVector {
  std::vector<double> values;
};

// How the boundary fluxes are assembled:
//   Naive      - the literal per-boundary double loop, O(N^3) per flux
//                vector; this is the path op counting instruments.
//   SuffixSum  - reuses suffix partial sums of the inner integrals, O(N^2);
//                same numbers up to floating-point reassociation (~1e-12).
enum class FluxAlgorithm { Naive, SuffixSum };

// g_e(0) = (1/dx) * integral of x f0(x) over element e.
VolumeDistribution init_volume_distribution(
    const std::function<double(double)>& f0, std::shared_ptr<const Grid> grid,
    const QuadratureSpec& quad = {});

// Boundary fluxes for the current state. Closed forms for the two paper
// kernels; user kernels integrate K(x_mid(p), y)/y by adaptive quadrature.
// Throws LogSingularityError for the constant kernel when x_min <= 0.
FluxVector compute_flux(const VolumeDistribution& state, const Kernel& kernel,
                        FluxAlgorithm algorithm = FluxAlgorithm::SuffixSum,
                        const QuadratureSpec& quad = {});

// Naive-path flux with every floating-point operation tallied. Bit-identical
// to compute_flux(..., FluxAlgorithm::Naive, ...). Closed-form kernels only.
FluxVector compute_flux_counted(const VolumeDistribution& state,
                                const Kernel& kernel, OpCount& count);

// One explicit step g_e <- g_e - (dt/dx) (J_{e+1} - J_e). Mass changes only
// through the outflow across x_max: dx * sum(dg) == -dt * J_{N-1} up to
// floating-point summation.
VolumeDistribution flfm_step(const VolumeDistribution& state,
                             const Kernel& kernel, double dt,
                             FluxAlgorithm algorithm = FluxAlgorithm::SuffixSum);

// Semi-discrete right-hand side -(J_{e+1} - J_e)/dx, for driving the scheme
// with an error-controlled integrator instead of fixed steps.
std::vector<double> flfm_rhs(const VolumeDistribution& state,
                             const Kernel& kernel,
                             FluxAlgorithm algorithm = FluxAlgorithm::SuffixSum);

}  // namespace coagkit
