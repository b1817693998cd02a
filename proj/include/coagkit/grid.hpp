#pragma once

#include <cstddef>
#include <vector>

namespace coagkit {

// Uniform partition of the truncated aggregate-volume domain [x_min, x_max].
// Boundaries are x_b = x_min + b * dx for b = 0..n_boundaries-1, so element e
// spans [boundary(e), boundary(e+1)) and there are n_boundaries-1 elements.
// Immutable after construction and safe to share across threads.
class Grid {
 public:
  // Throws InvalidDomainError / TooFewElementsError on bad input.
  Grid(double x_min, double x_max, std::size_t n_boundaries);

  double x_min() const { return boundaries_.front(); }
  double x_max() const { return boundaries_.back(); }
  double dx() const { return dx_; }
  std::size_t n_boundaries() const { return boundaries_.size(); }
  std::size_t n_elements() const { return boundaries_.size() - 1; }

  double boundary(std::size_t b) const { return boundaries_[b]; }
  double midpoint(std::size_t e) const { return midpoints_[e]; }

  const std::vector<double>& boundaries() const { return boundaries_; }
  const std::vector<double>& midpoints() const { return midpoints_; }

 private:
  std::vector<double> boundaries_;
  std::vector<double> midpoints_;
  double dx_;
};

Grid make_uniform_grid(double x_min, double x_max, std::size_t n_boundaries);

// Cell-averaged restriction of fine per-element values onto a coarser grid
// over the same domain. The fine element count must be an integer multiple of
// the coarse one; throws IncompatibleGridError otherwise. Preserves the
// discrete integral dx * sum(values).
std::vector<double> restrict_to_coarse(const std::vector<double>& fine_values,
                                       const Grid& fine, const Grid& coarse);

}  // namespace coagkit
