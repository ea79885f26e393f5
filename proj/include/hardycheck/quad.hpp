#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "hardycheck/errors.hpp"

namespace hardycheck {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Values above this are reported as +inf: finiteness of the condition
/// constants is the semantic payload, not their overflowing magnitude.
inline constexpr double kOverflowGuard = 1e300;

inline double guard_overflow(double x) { return x > kOverflowGuard ? kInf : x; }

struct QuadConfig {
  double rel_tol = 1e-9;
  // Near-zero absolute floor: tail integrals can be ~1e-25 yet still need
  // relative accuracy (they enter ratios against equally tiny closed forms).
  double abs_tol = 1e-12;
  int max_depth = 60;
  // Truncation of the log substitution t = e^s on (0,inf); e^{+-46} ~ 1e+-20.
  double log_lo = -46.0;
  double log_hi = 46.0;
};

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod 7-15 over (a,b), b possibly +inf. Unbounded ranges
/// and ranges touching 0 are mapped through t = e^s truncated at cfg.log_lo/hi.
/// Integrable endpoint singularities and kinks should be passed in `splits`.
/// Divergence shows up as +inf (not an error); failure to converge at
/// max_depth throws QuadratureFailure with the partial estimate.
double integrate(const ScalarFn& f, double a, double b, const QuadConfig& cfg = {},
                 const std::vector<double>& splits = {});

/// Supremum of a piecewise-continuous f over (a,b): geometric scan plus
/// boundary limits plus local refinement to >= 2048 nodes per decade around
/// the maxima. Returns +inf when values exceed the overflow guard.
double sup_on(const ScalarFn& f, double a, double b, const QuadConfig& cfg = {},
              const std::vector<double>& boundaries = {});

/// Supremum over [lo,hi] of A(x)*B(x) where A is non-increasing and B is
/// non-decreasing. Bisects on the certificate sup <= A(lo)*B(hi), so the
/// result carries a two-sided bound of relative width rel_tol.
double sup_product(const ScalarFn& non_increasing, const ScalarFn& non_decreasing,
                   double lo, double hi, double rel_tol = 1e-10, int max_depth = 60);

/// Root of F(x) = target for continuous non-decreasing F on [lo,hi] by
/// bisection with secant refinement. Requires F(lo) <= target <= F(hi).
double solve_monotone(const ScalarFn& F, double target, double lo, double hi,
                      double rel_tol = 1e-12, double abs_tol = 1e-14);

}  // namespace hardycheck
