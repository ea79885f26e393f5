#pragma once

#include <vector>

#include "hardycheck/covering.hpp"
#include "hardycheck/weights.hpp"

namespace hardycheck {

/// Nonnegative step function: h = values[i] on [breakpoints[i], breakpoints[i+1]),
/// zero outside [t_0, t_n). Primitives are exact, so the only quadrature error
/// in the functionals below lives in the weight integrals.
struct TestFunction {
  std::vector<double> breakpoints;  // size n+1, ascending, t_0 >= 0
  std::vector<double> values;       // size n, all >= 0

  TestFunction(std::vector<double> bps, std::vector<double> vals);

  double primitive(double t) const;                    // \int_0^t h
  double primitive_from(double a, double t) const;     // \int_a^t h
  double total() const { return primitive(breakpoints.back()); }
  bool is_zero() const;
  TestFunction scaled(double lambda) const;
};

/// (\int_0^inf h^p v)^{1/p} via closed-form cell integrals of v.
double rhs_norm(const TestFunction& h, const WeightSpec& v, double p);

/// Left side of the main inequality:
/// (\int_0^inf (\int_x^inf (\int_0^t h)^q w dt)^{r/q} u(x) dx)^{1/r}.
/// domain_cap < inf restricts every integral to (0, cap]; used by the
/// best-constant estimator as a divergence witness when the w-tail is infinite.
double lhs_main(const TestFunction& h, const WeightSpec& u, const WeightSpec& w,
                double q, double r, const QuadConfig& cfg = {},
                double domain_cap = kInf);

/// Supremum-operator reduction:
/// (\int_0^inf u(x) [sup_{s>=x} (\int_s^inf w)^{1/q} \int_0^s h]^r dx)^{1/r}.
double lhs_sup(const TestFunction& h, const WeightSpec& u, const WeightSpec& w,
               double q, double r, const QuadConfig& cfg = {},
               double domain_cap = kInf);

/// Block norm over the covering sequence:
/// || { 2^{k/r} (\int_{x_k}^{x_{k+1}} (\int_{x_k}^t h)^q w dt)^{1/q} } ||_{l^r}.
double lhs_discrete_blocks(const TestFunction& h, const CoveringSequence& cs,
                           const WeightSpec& w, double q, double r,
                           const QuadConfig& cfg = {}, double domain_cap = kInf);

struct EquivalenceBreakdown {
  double lhs_full;
  double term_discrete;
  double term_sup;
  double ratio_lower;  // lhs_full / max(term_discrete, term_sup)
  double ratio_upper;  // (term_discrete + term_sup) / lhs_full
};

EquivalenceBreakdown equivalence_decomposition(const TestFunction& h,
                                               const WeightSpec& u,
                                               const WeightSpec& w, double q,
                                               double r, const CoveringSequence& cs,
                                               const QuadConfig& cfg = {});

}  // namespace hardycheck
