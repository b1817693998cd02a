#include "coagkit/flfm.hpp"

#include <cmath>

#include "coagkit/errors.hpp"

namespace coagkit {

namespace {

void check_state(const VolumeDistribution& state) {
  if (!state.grid) throw DomainError("state has no grid");
  if (state.values.size() != state.grid->n_elements()) {
    throw DimensionMismatchError("state length does not match grid");
  }
}

// Flux across boundary b, literal transcription of the generalized formula:
// pairs every donor element p below b with the partial receiving cell
// q = b-1-p (integrated from its midpoint) plus all whole cells above it.
// W_first and W are the inner integrals of K(x_mid(p), y)/y.

// K == 1: inner integrals are log ratios, independent of p.
template <class Ops>
void flux_constant_naive(const std::vector<double>& g,
                         const std::vector<double>& xb,
                         const std::vector<double>& mid, double dx,
                         std::vector<double>& J, Ops ops) {
  const std::size_t n = xb.size();
  const std::size_t m = n - 1;
  J[0] = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    double total = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      const std::size_t q = b - 1 - p;
      double bracket = std::log(xb[q + 1] / mid[q]) * g[q];
      ops.div();
      ops.spec();
      ops.mul();
      for (std::size_t j = b - p; j < m; ++j) {
        bracket += std::log(xb[j + 1] / xb[j]) * g[j];
        ops.div();
        ops.spec();
        ops.mul();
        ops.add();
      }
      total += (dx * g[p]) * bracket;
      ops.mul(2);
      ops.add();
    }
    J[b] = total;
  }
}

// K == xy: K(x_mid(p), y)/y = x_mid(p), so the inner integrals are
// x_mid(p) times the interval length.
template <class Ops>
void flux_mult_naive(const std::vector<double>& g,
                     const std::vector<double>& xb,
                     const std::vector<double>& mid, double dx,
                     std::vector<double>& J, Ops ops) {
  const std::size_t n = xb.size();
  const std::size_t m = n - 1;
  J[0] = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    double total = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      const std::size_t q = b - 1 - p;
      double bracket = (mid[p] * (xb[q + 1] - mid[q])) * g[q];
      ops.add();
      ops.mul(2);
      for (std::size_t j = b - p; j < m; ++j) {
        bracket += (mid[p] * dx) * g[j];
        ops.mul(2);
        ops.add();
      }
      total += (dx * g[p]) * bracket;
      ops.mul(2);
      ops.add();
    }
    J[b] = total;
  }
}

// User kernels: same structure, inner integrals by adaptive quadrature.
void flux_user_naive(const Kernel& kernel, const std::vector<double>& g,
                     const std::vector<double>& xb,
                     const std::vector<double>& mid, double dx,
                     const QuadratureSpec& quad, std::vector<double>& J) {
  const std::size_t n = xb.size();
  const std::size_t m = n - 1;
  auto weight = [&](double xm, double lo, double hi) {
    return adaptive_integrate(
        [&kernel, xm](double y) { return kernel.evaluate(xm, y) / y; }, lo, hi,
        quad);
  };
  J[0] = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    double total = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      const std::size_t q = b - 1 - p;
      double bracket = weight(mid[p], mid[q], xb[q + 1]) * g[q];
      for (std::size_t j = b - p; j < m; ++j) {
        bracket += weight(mid[p], xb[j], xb[j + 1]) * g[j];
      }
      total += (dx * g[p]) * bracket;
    }
    J[b] = total;
  }
}

// O(N^2) path: the whole-cell inner sums are suffix sums, shared across
// boundaries. Reassociates the naive summation, so values differ from the
// naive path at the rounding level only.
void flux_constant_suffix(const std::vector<double>& g,
                          const std::vector<double>& xb,
                          const std::vector<double>& mid, double dx,
                          std::vector<double>& J) {
  const std::size_t n = xb.size();
  const std::size_t m = n - 1;
  std::vector<double> ln_ratio(m), ln_first(m);
  for (std::size_t j = 0; j < m; ++j) {
    ln_ratio[j] = std::log(xb[j + 1] / xb[j]);
    ln_first[j] = std::log(xb[j + 1] / mid[j]);
  }
  // suffix[k] = sum_{j >= k} ln_ratio[j] g[j]
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    suffix[k] = ln_ratio[k] * g[k] + suffix[k + 1];
  }
  J[0] = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    double total = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      const std::size_t q = b - 1 - p;
      total += (dx * g[p]) * (ln_first[q] * g[q] + suffix[b - p]);
    }
    J[b] = total;
  }
}

void flux_mult_suffix(const std::vector<double>& g,
                      const std::vector<double>& xb,
                      const std::vector<double>& mid, double dx,
                      std::vector<double>& J) {
  const std::size_t n = xb.size();
  const std::size_t m = n - 1;
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    suffix[k] = g[k] + suffix[k + 1];
  }
  J[0] = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    double total = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      const std::size_t q = b - 1 - p;
      total += (dx * g[p]) *
               (mid[p] * ((xb[q + 1] - mid[q]) * g[q] + dx * suffix[b - p]));
    }
    J[b] = total;
  }
}

template <class Ops>
FluxVector compute_flux_impl(const VolumeDistribution& state,
                             const Kernel& kernel, FluxAlgorithm algorithm,
                             const QuadratureSpec& quad, Ops ops) {
  const Grid& grid = *state.grid;
  if (kernel.kind() == KernelKind::Constant && !(grid.x_min() > 0.0)) {
    throw LogSingularityError(
        "constant-kernel flux needs x_min > 0 (log of boundary ratios)");
  }
  FluxVector flux;
  flux.values.assign(grid.n_boundaries(), 0.0);
  switch (kernel.kind()) {
    case KernelKind::Constant:
      if (algorithm == FluxAlgorithm::Naive || Ops::counting) {
        flux_constant_naive(state.values, grid.boundaries(), grid.midpoints(),
                            grid.dx(), flux.values, ops);
      } else {
        flux_constant_suffix(state.values, grid.boundaries(), grid.midpoints(),
                             grid.dx(), flux.values);
      }
      break;
    case KernelKind::Multiplicative:
      if (algorithm == FluxAlgorithm::Naive || Ops::counting) {
        flux_mult_naive(state.values, grid.boundaries(), grid.midpoints(),
                        grid.dx(), flux.values, ops);
      } else {
        flux_mult_suffix(state.values, grid.boundaries(), grid.midpoints(),
                         grid.dx(), flux.values);
      }
      break;
    case KernelKind::User:
      flux_user_naive(kernel, state.values, grid.boundaries(),
                      grid.midpoints(), grid.dx(), quad, flux.values);
      break;
  }
  return flux;
}

}  // namespace

VolumeDistribution init_volume_distribution(
    const std::function<double(double)>& f0, std::shared_ptr<const Grid> grid,
    const QuadratureSpec& quad) {
  VolumeDistribution state;
  state.values.resize(grid->n_elements());
  for (std::size_t e = 0; e < state.values.size(); ++e) {
    const double v = adaptive_integrate(
        [&f0](double x) { return x * f0(x); }, grid->boundary(e),
        grid->boundary(e + 1), quad);
    state.values[e] = v / grid->dx();
  }
  state.grid = std::move(grid);
  return state;
}

FluxVector compute_flux(const VolumeDistribution& state, const Kernel& kernel,
                        FluxAlgorithm algorithm, const QuadratureSpec& quad) {
  check_state(state);
  return compute_flux_impl(state, kernel, algorithm, quad, detail::NoCount{});
}

FluxVector compute_flux_counted(const VolumeDistribution& state,
                                const Kernel& kernel, OpCount& count) {
  check_state(state);
  if (kernel.kind() == KernelKind::User) {
    throw DomainError("counted assembly requires a closed-form kernel");
  }
  return compute_flux_impl(state, kernel, FluxAlgorithm::Naive, {},
                           detail::CountOps{&count});
}

VolumeDistribution flfm_step(const VolumeDistribution& state,
                             const Kernel& kernel, double dt,
                             FluxAlgorithm algorithm) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("flfm_step requires dt > 0");
  }
  const FluxVector flux = compute_flux(state, kernel, algorithm);
  const double dt_over_dx = dt / state.grid->dx();
  VolumeDistribution next;
  next.grid = state.grid;
  next.values.resize(state.values.size());
  for (std::size_t e = 0; e < next.values.size(); ++e) {
    next.values[e] =
        state.values[e] -
        dt_over_dx * (flux.values[e + 1] - flux.values[e]);
  }
  return next;
}

std::vector<double> flfm_rhs(const VolumeDistribution& state,
                             const Kernel& kernel, FluxAlgorithm algorithm) {
  const FluxVector flux = compute_flux(state, kernel, algorithm);
  const double inv_dx = 1.0 / state.grid->dx();
  std::vector<double> rhs(state.values.size());
  for (std::size_t e = 0; e < rhs.size(); ++e) {
    rhs[e] = -(flux.values[e + 1] - flux.values[e]) * inv_dx;
  }
  return rhs;
}

}  // namespace coagkit
