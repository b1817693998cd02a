#include "coagkit/bessel.hpp"

#include <cmath>

#include "coagkit/errors.hpp"

namespace coagkit {

namespace {

constexpr double kSeriesCutoff = 50.0;
constexpr double kTwoPi = 6.283185307179586476925287;

// sum_{k>=0} (x/2)^{2k+1} / (k! (k+1)!); all terms positive, so the sum is
// perfectly conditioned for any x below the overflow range.
double i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// exp(-x) I_1(x) ~ (1/sqrt(2 pi x)) (1 - 3/(8x) - 15/(128 x^2) - ...),
// truncated at its smallest term. Accurate to ~1e-15 relative for x >= 50.
double i1_scaled_asymptotic(double x) {
  const double mu = 4.0;  // 4 nu^2 with nu = 1
  double term = 1.0;
  double sum = 1.0;
  double prev = std::abs(term);
  for (int k = 1; k < 40; ++k) {
    const double s = 2.0 * k - 1.0;
    term *= -(mu - s * s) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;  // divergent tail reached
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-17) break;
  }
  return sum / std::sqrt(kTwoPi * x);
}

}  // namespace

double bessel_i1(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_i1 requires finite x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x <= kSeriesCutoff) return i1_series(x);
  return i1_scaled_asymptotic(x) * std::exp(x);
}

double bessel_i1_scaled(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_i1_scaled requires finite x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x <= kSeriesCutoff) return i1_series(x) * std::exp(-x);
  return i1_scaled_asymptotic(x);
}

}  // namespace coagkit
