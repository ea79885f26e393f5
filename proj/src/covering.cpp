#include "hardycheck/covering.hpp"

#include <cmath>

namespace hardycheck {

CoveringSequence build_covering(const WeightSpec& u, int k_min, int k_max_hint,
                                const QuadConfig& , bool allow_degenerate) {
  if (k_min > 0 || k_max_hint < 0)
    throw std::invalid_argument("build_covering: need k_min <= 0 <= k_max_hint");
  CoveringSequence cs;
  cs.k_min = k_min;
  cs.total_mass = u.total_mass();
  cs.finite_mass = u.tail_finite();

  int k_max = k_max_hint;
  if (cs.finite_mass) {
    int M = static_cast<int>(std::floor(std::log2(cs.total_mass)));
    // Guard the floor against rounding at exact powers of two.
    while (std::ldexp(1.0, M + 1) <= cs.total_mass) ++M;
    while (std::ldexp(1.0, M) > cs.total_mass) --M;
    cs.M = M;
    const double men = std::ldexp(1.0, M);
    if (std::abs(cs.total_mass - men) <= 1e-9 * cs.total_mass) {
      if (!allow_degenerate)
        throw DegenerateMassError("build_covering: total mass equals 2^M exactly");
      cs.degenerate_dropped = true;
      cs.M = M - 1;
    }
    k_max = cs.M;
  }
  cs.k_max = k_max;

  auto F = [&u](double x) { return u.lower_integral(x); };
  double prev = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double target = std::ldexp(1.0, k);
    double hi = std::max(1e-9, prev > 0.0 ? 2.0 * prev : 1e-9);
    while (F(hi) < target) {
      hi *= 2.0;
      if (hi > 1e290)
        throw BracketError("build_covering: could not bracket x_k");
    }
    const double x = solve_monotone(F, target, prev, hi, 1e-13, 0.0);
    cs.points.push_back(x);
    prev = x;
  }
  return cs;
}

std::vector<BlockCheck> validate_covering(const CoveringSequence& cs,
                                          const WeightSpec& u, double p, double r,
                                          const QuadConfig& cfg, double rel_tol) {
  std::vector<BlockCheck> out;
  const bool with_remark = (p > 0.0 && r > 0.0 && r < p);
  for (int k = cs.k_min + 1; k <= cs.k_max; ++k) {
    BlockCheck bc{};
    bc.k = k;
    const double a = cs.x(k - 1), b = cs.x(k);
    bc.integral = u.lower_integral(b) - u.lower_integral(a);
    const double expect = std::ldexp(1.0, k - 1);
    bc.ratio = bc.integral / expect;
    bc.pass = std::abs(bc.integral - expect) <= rel_tol * expect;
    if (with_remark) {
      const double e = r / (p - r);
      bc.remark_value = integrate(
          [&](double t) { return std::pow(u.lower_integral(t), e) * u.eval(t); },
          a, b, cfg, u.interior_breakpoints());
      const double exp_pr = p / (p - r);
      const double coef = (p - r) / p;
      bc.remark_lo = coef * std::pow(2.0, (k - 1) * exp_pr) *
                     (1.0 - std::pow(2.0, -exp_pr));
      bc.remark_hi = coef * std::pow(2.0, k * exp_pr);
      const double slack = 1e-6 * bc.remark_hi;
      if (bc.remark_value < bc.remark_lo - slack || bc.remark_value > bc.remark_hi + slack)
        bc.pass = false;
    }
    out.push_back(bc);
  }
  return out;
}

}  // namespace hardycheck
