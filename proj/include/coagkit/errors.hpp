#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coagkit {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Grid construction with non-finite or out-of-order bounds.
class InvalidDomainError : public Error {
 public:
  using Error::Error;
};

// Grid construction with fewer than 3 boundaries.
class TooFewElementsError : public Error {
 public:
  using Error::Error;
};

// Restriction between grids that do not nest.
class IncompatibleGridError : public Error {
 public:
  using Error::Error;
};

// Function argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation that would evaluate ln at or across zero.
class LogSingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Vector arguments of mismatched length.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Non-finite integrand sample seen by the quadrature driver.
class IntegrandError : public Error {
 public:
  using Error::Error;
};

// Quadrature ran out of subdivisions; carries the best estimate so the
// caller can decide whether the result is still usable.
class QuadratureConvergenceError : public Error {
 public:
  QuadratureConvergenceError(const std::string& what, double best_estimate,
                             double error_bound)
      : Error(what), best_estimate(best_estimate), error_bound(error_bound) {}

  double best_estimate;
  double error_bound;
};

// Time integration failed (step-size underflow or NaN from the RHS);
// carries the last accepted state.
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double t_last,
                  std::vector<double> last_state)
      : Error(what), t_last(t_last), last_state(std::move(last_state)) {}

  double t_last;
  std::vector<double> last_state;
};

// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace coagkit
