#pragma once

#include <stdexcept>
#include <string>

namespace spectral4 {

// Malformed or inconsistent input data (bad grids, bad files, bad options).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation, e.g. x not in [0,1].
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The adaptive integrator could not keep the local error below tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double x)
      : std::runtime_error(what + " (x = " + std::to_string(x) + ")"), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

// A contour passes too close to a zero of the sampled function; callers retry
// with a perturbed contour.
class ContourTooClose : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root refinement failed.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The number of located eigenvalues disagrees with the argument-principle count.
class CompletenessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectral4
