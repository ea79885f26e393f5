#pragma once

#include <map>
#include <string>
#include <vector>

#include "hardycheck/covering.hpp"
#include "hardycheck/quad.hpp"
#include "hardycheck/weights.hpp"

namespace hardycheck {

/// One characterization constant. `defined` is false when the constant's
/// exponents do not exist for the given (p,q,r) (e.g. p/(p-r) with r >= p);
/// such entries carry value NaN and are excluded from comparisons.
struct ConditionEntry {
  double value = 0.0;
  bool finite = true;
  bool defined = true;

  static ConditionEntry of(double v);
  static ConditionEntry undefined();
};

using ConditionMap = std::map<std::string, ConditionEntry>;

struct ConditionReport {
  char regime = 'a';
  ConditionMap F;      // F1..F6
  ConditionMap D;      // D1..D4
  ConditionMap B;      // B1..B4
  ConditionMap C_sup;  // C1..C4
  ConditionMap A;      // A1,A2 (empty when no covering sequence was supplied)
  bool a_truncation_warning = false;
  double combined = 0.0;
};

/// Regime of the exponent triple:
///   a: p <= min(q,r)   b: r < p <= q   c: q < p <= r   d: max(q,r) < p
char classify_regime(double p, double q, double r);

/// Best constant of the single-block tail-weighted inequality
///   (\int_a^b (\int_a^x h)^q w_)^{1/q} <= c (\int_a^b h^p v)^{1/p}:
/// for p <= q the sup form sup_{x in (a,b)} (\int_x^b w_)^{1/q} sigma_p(a,x),
/// for q < p the integral form
///   (\int_a^b (\int_x^b w_)^{q/(p-q)} w_(x) sigma_p(a,x)^{pq/(p-q)} dx)^{(p-q)/(pq)}.
double hardy_block_constant(const WeightSpec& v, const WeightSpec& w_, double p,
                            double q, double a, double b,
                            const QuadConfig& cfg = {});

/// Supremum-operator constants C1..C4 for
///   (\int_0^inf [sup_{y>=x} u_factor(y) \int_0^y g]^r w_outer dx)^{1/r}
///     <= C (\int g^p v)^{1/p},
/// with u_factor non-increasing. C1,C2 exist for p <= r; C3,C4 for r < p.
ConditionMap compute_C_sup(const ScalarFn& u_factor, const WeightSpec& w_outer,
                           const WeightSpec& v, double p, double r,
                           const QuadConfig& cfg = {});

/// Iterated-operator constants D1..D4: the C-family specialized to
/// u_factor(y) = (\int_y^inf w)^{1/q} and outer weight u (same code path).
ConditionMap compute_D(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg = {});

/// Main characterization constants F1..F6. F1..F4 coincide with D1..D4;
/// F5, F6 trade the inner supremum for an integral (defined for q < p).
ConditionMap compute_F(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg = {});

/// Reduction constants B1..B4: B1 = F1, B3 = F5, B4 = F6 (shared code paths);
/// B2 replaces F3's outer profile by cumulative u-mass (defined for r < p).
ConditionMap compute_B(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg = {});

/// Discrete block constants over a covering sequence:
/// l^rho norm over k of 2^{k/r} * hardy_block_constant on [x_k, x_{k+1}).
/// A1 uses the sup-form (p <= q), A2 the integral form (q < p).
/// Sets *truncation_warning when a boundary block (k_min or the terminal
/// block) contributes more than 1% of the norm.
ConditionMap compute_A(const CoveringSequence& cs, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg = {},
                       bool* truncation_warning = nullptr);

/// Regime-appropriate sum: F1+F2 (a), F3+F4 (b), F2+F5 (c), F4+F6 (d).
double combined_constant(const ConditionReport& report);

/// Full report; cs may be null (A-map left empty).
ConditionReport condition_report(const WeightSpec& u, const WeightSpec& v,
                                 const WeightSpec& w, double p, double q,
                                 double r, const CoveringSequence* cs = nullptr,
                                 const QuadConfig& cfg = {});

}  // namespace hardycheck
