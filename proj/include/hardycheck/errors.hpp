#pragma once

#include <stdexcept>
#include <string>

namespace hardycheck {

/// A weight spec that violates the weight-class condition
/// (0 < \int_0^x v < \infty for all x > 0).
struct WeightClassError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature did not converge within the depth budget.
/// Carries the partial estimate and the error bound reached.
struct QuadratureFailure : std::runtime_error {
  double estimate;
  double error_bound;
  QuadratureFailure(const std::string& what, double est, double err)
      : std::runtime_error(what), estimate(est), error_bound(err) {}
};

/// solve_monotone was called with a bracket that does not contain the target.
struct BracketError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Total u-mass equals 2^M exactly, so x_M has no finite solution.
struct DegenerateMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by the best-constant estimator when every candidate gives 0/0.
struct DegenerateProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace hardycheck
