#pragma once

namespace coagkit {

// Modified Bessel function of the first kind, I_1(x), for x >= 0.
// Power series for moderate arguments, asymptotic expansion beyond.
// Throws DomainError for x < 0.
double bessel_i1(double x);

// exp(-x) * I_1(x); stays finite for arbitrarily large x and is the form
// the analytic solutions use to avoid overflow of the separate factors.
double bessel_i1_scaled(double x);

}  // namespace coagkit
