#include "coagkit/diagnostics.hpp"

#include <cmath>

#include "coagkit/errors.hpp"

namespace coagkit {

double partial_moment(int order, Scheme scheme,
                      const std::vector<double>& values, const Grid& grid) {
  if (order != 0 && order != 1) {
    throw DomainError("partial_moment supports orders 0 and 1");
  }
  if (values.size() != grid.n_elements()) {
    throw DimensionMismatchError("value count does not match grid");
  }
  const std::vector<double>& xb = grid.boundaries();
  double sum = 0.0;
  if (scheme == Scheme::FEM) {
    if (order == 0) {
      for (double v : values) sum += v;
      return grid.dx() * sum;
    }
    for (std::size_t e = 0; e < values.size(); ++e) {
      sum += values[e] * (xb[e + 1] * xb[e + 1] - xb[e] * xb[e]);
    }
    return 0.5 * sum;
  }
  if (order == 0) {
    if (!(grid.x_min() > 0.0)) {
      throw LogSingularityError("FLFM zeroth moment needs x_min > 0");
    }
    for (std::size_t e = 0; e < values.size(); ++e) {
      sum += values[e] * std::log(xb[e + 1] / xb[e]);
    }
    return sum;
  }
  for (double v : values) sum += v;
  return grid.dx() * sum;
}

double grid_error_norm(const std::vector<double>& approx,
                       const std::vector<double>& reference, double dx) {
  if (approx.size() != reference.size()) {
    throw DimensionMismatchError("error norm needs vectors of equal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    sum += std::abs(approx[i] - reference[i]);
  }
  return dx * sum;
}

double estimate_order(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw DomainError("order fit needs at least 2 pairs");
  double sx = 0.0, sy = 0.0;
  for (const auto& [dx, err] : pairs) {
    if (!(dx > 0.0) || !(err > 0.0)) {
      throw DomainError("order fit needs positive dx and error entries");
    }
    sx += std::log(dx);
    sy += std::log(err);
  }
  const double mx = sx / static_cast<double>(pairs.size());
  const double my = sy / static_cast<double>(pairs.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [dx, err] : pairs) {
    const double lx = std::log(dx) - mx;
    sxx += lx * lx;
    sxy += lx * (std::log(err) - my);
  }
  if (sxx == 0.0) throw DomainError("order fit needs distinct dx values");
  return sxy / sxx;
}

std::vector<double> counted_rhs(Scheme scheme,
                                const std::vector<double>& values,
                                std::shared_ptr<const Grid> grid,
                                const Kernel& kernel, OpCount& count) {
  if (scheme == Scheme::FEM) {
    SizeDistribution state{std::move(grid), values};
    return fem_rhs_counted(state, kernel, count);
  }
  VolumeDistribution state{std::move(grid), values};
  return compute_flux_counted(state, kernel, count).values;
}

}  // namespace coagkit
