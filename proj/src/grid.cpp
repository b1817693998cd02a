#include "coagkit/grid.hpp"

#include <cmath>
#include <sstream>

#include "coagkit/errors.hpp"

namespace coagkit {

Grid::Grid(double x_min, double x_max, std::size_t n_boundaries) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidDomainError("grid bounds must be finite");
  }
  if (x_min < 0.0 || x_max <= x_min) {
    std::ostringstream msg;
    msg << "grid requires 0 <= x_min < x_max, got [" << x_min << ", " << x_max
        << "]";
    throw InvalidDomainError(msg.str());
  }
  if (n_boundaries < 3) {
    throw TooFewElementsError("grid needs at least 3 boundaries, got " +
                              std::to_string(n_boundaries));
  }

  dx_ = (x_max - x_min) / static_cast<double>(n_boundaries - 1);
  boundaries_.resize(n_boundaries);
  // x_min + i*dx rather than cumulative addition, so coordinates do not
  // drift over thousands of elements and are reproducible bit-for-bit.
  for (std::size_t i = 0; i < n_boundaries; ++i) {
    boundaries_[i] = x_min + static_cast<double>(i) * dx_;
  }
  midpoints_.resize(n_boundaries - 1);
  for (std::size_t e = 0; e + 1 < n_boundaries; ++e) {
    midpoints_[e] = 0.5 * (boundaries_[e] + boundaries_[e + 1]);
  }
}

Grid make_uniform_grid(double x_min, double x_max, std::size_t n_boundaries) {
  return Grid(x_min, x_max, n_boundaries);
}

std::vector<double> restrict_to_coarse(const std::vector<double>& fine_values,
                                       const Grid& fine, const Grid& coarse) {
  if (fine_values.size() != fine.n_elements()) {
    throw DimensionMismatchError("fine value count does not match fine grid");
  }
  const std::size_t nf = fine.n_elements();
  const std::size_t nc = coarse.n_elements();
  const double tol = 8.0 * (std::abs(fine.x_max()) + 1.0) * 1e-16;
  if (std::abs(fine.x_min() - coarse.x_min()) > tol ||
      std::abs(fine.x_max() - coarse.x_max()) > tol) {
    throw IncompatibleGridError("grids do not share the same domain");
  }
  if (nc == 0 || nf % nc != 0) {
    throw IncompatibleGridError(
        "fine element count is not a multiple of the coarse element count");
  }
  const std::size_t ratio = nf / nc;
  std::vector<double> out(nc);
  const double inv = 1.0 / static_cast<double>(ratio);
  for (std::size_t c = 0; c < nc; ++c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < ratio; ++k) {
      acc += fine_values[c * ratio + k];
    }
    out[c] = acc * inv;
  }
  return out;
}

}  // namespace coagkit
