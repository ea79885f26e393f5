#include "hardycheck/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardycheck {

TestFunction::TestFunction(std::vector<double> bps, std::vector<double> vals)
    : breakpoints(std::move(bps)), values(std::move(vals)) {
  if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
    throw std::invalid_argument("TestFunction: need n+1 breakpoints for n cells");
  if (!(breakpoints.front() >= 0.0))
    throw std::invalid_argument("TestFunction: breakpoints must be >= 0");
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("TestFunction: breakpoints must be ascending");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("TestFunction: values must be >= 0");
}

double TestFunction::primitive(double t) const {
  if (t <= breakpoints.front()) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double l = breakpoints[i], u = breakpoints[i + 1];
    if (t <= l) break;
    acc += values[i] * (std::min(t, u) - l);
  }
  return acc;
}

double TestFunction::primitive_from(double a, double t) const {
  if (t <= a) return 0.0;
  return primitive(t) - primitive(a);
}

bool TestFunction::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

TestFunction TestFunction::scaled(double lambda) const {
  std::vector<double> v = values;
  for (double& x : v) x *= lambda;
  return TestFunction(breakpoints, std::move(v));
}

double rhs_norm(const TestFunction& h, const WeightSpec& v, double p) {
  double acc = 0.0;
  for (size_t i = 0; i < h.values.size(); ++i) {
    if (h.values[i] == 0.0) continue;
    const double cell =
        v.lower_integral(h.breakpoints[i + 1]) -
        (h.breakpoints[i] > 0.0 ? v.lower_integral(h.breakpoints[i]) : 0.0);
    acc += std::pow(h.values[i], p) * cell;
  }
  return std::pow(acc, 1.0 / p);
}

namespace {

// \int_x^cap w, finite by construction when cap < inf.
double capped_upper(const WeightSpec& w, double x, double cap) {
  if (cap == kInf) return w.upper_integral(x);
  if (x >= cap) return 0.0;
  // Via the lower primitive: finite even when the full tail diverges.
  return w.lower_integral(cap) - (x > 0.0 ? w.lower_integral(x) : 0.0);
}

std::vector<double> merged_splits(const TestFunction& h, const WeightSpec& a,
                                  const WeightSpec& b) {
  std::vector<double> s = h.breakpoints;
  for (double x : a.interior_breakpoints()) s.push_back(x);
  for (double x : b.interior_breakpoints()) s.push_back(x);
  return s;
}

}  // namespace

double lhs_main(const TestFunction& h, const WeightSpec& u, const WeightSpec& w,
                double q, double r, const QuadConfig& cfg, double domain_cap) {
  if (h.is_zero()) return 0.0;
  const double t0 = h.breakpoints.front();
  const double tn = h.breakpoints.back();
  const double ptot = h.total();
  const double w_beyond_support = capped_upper(w, tn, domain_cap);
  if (w_beyond_support == kInf) return kInf;

  // Per-cell integrals of (\int_0^t h)^q w and their suffix sums; the inner
  // integral at any x is then one partial-cell quadrature plus a lookup.
  const size_t n = h.values.size();
  std::vector<double> suffix(n + 1, 0.0);
  suffix[n] = std::pow(ptot, q) * w_beyond_support;
  auto cell_integrand = [&](double t) {
    return std::pow(h.primitive(t), q) * w.eval(t);
  };
  for (size_t i = n; i-- > 0;) {
    const double cell = (h.values[i] == 0.0 && h.primitive(h.breakpoints[i]) == 0.0)
                            ? 0.0
                            : integrate(cell_integrand, h.breakpoints[i],
                                        h.breakpoints[i + 1], cfg,
                                        w.interior_breakpoints());
    suffix[i] = suffix[i + 1] + cell;
  }

  auto inner = [&](double x) -> double {
    if (x <= t0) return suffix[0];
    if (x >= tn) return std::pow(ptot, q) * capped_upper(w, x, domain_cap);
    const auto it = std::upper_bound(h.breakpoints.begin(), h.breakpoints.end(), x);
    const size_t i = static_cast<size_t>(it - h.breakpoints.begin()) - 1;
    double part = 0.0;
    if (x < h.breakpoints[i + 1])
      part = integrate(cell_integrand, x, h.breakpoints[i + 1], cfg,
                       w.interior_breakpoints());
    return suffix[i + 1] + part;
  };

  double total = 0.0;
  if (t0 > 0.0)
    total += std::pow(suffix[0], r / q) * u.lower_integral(t0);
  total += integrate([&](double x) { return std::pow(inner(x), r / q) * u.eval(x); },
                     t0, tn, cfg, merged_splits(h, u, w));
  if (domain_cap > tn) {
    const double tail = integrate(
        [&](double x) {
          return std::pow(capped_upper(w, x, domain_cap), r / q) * u.eval(x);
        },
        tn, domain_cap, cfg, merged_splits(h, u, w));
    total += std::pow(ptot, r) * tail;
  }
  return guard_overflow(std::pow(total, 1.0 / r));
}

double lhs_sup(const TestFunction& h, const WeightSpec& u, const WeightSpec& w,
               double q, double r, const QuadConfig& cfg, double domain_cap) {
  if (h.is_zero()) return 0.0;
  const double t0 = h.breakpoints.front();
  const double tn = h.breakpoints.back();
  const double ptot = h.total();
  if (capped_upper(w, tn, domain_cap) == kInf) return kInf;

  ScalarFn A = [&](double s) { return std::pow(capped_upper(w, s, domain_cap), 1.0 / q); };
  ScalarFn B = [&](double s) { return h.primitive(s); };

  // Right-to-left cumulative maxima over the h-cells; beyond the support the
  // product is non-increasing so its sup over [x,inf) is just its value at x.
  const size_t n = h.values.size();
  std::vector<double> suffix_sup(n + 1, 0.0);
  suffix_sup[n] = ptot * A(tn);
  for (size_t i = n; i-- > 0;) {
    const double cell_sup =
        sup_product(A, B, h.breakpoints[i], h.breakpoints[i + 1]);
    suffix_sup[i] = std::max(suffix_sup[i + 1], cell_sup);
  }

  auto S = [&](double x) -> double {
    if (x <= t0) return suffix_sup[0];
    if (x >= tn) return ptot * A(x);
    const auto it = std::upper_bound(h.breakpoints.begin(), h.breakpoints.end(), x);
    const size_t i = static_cast<size_t>(it - h.breakpoints.begin()) - 1;
    const double partial = sup_product(A, B, x, h.breakpoints[i + 1]);
    return std::max(partial, suffix_sup[i + 1]);
  };

  double total = 0.0;
  if (t0 > 0.0) total += std::pow(suffix_sup[0], r) * u.lower_integral(t0);
  total += integrate([&](double x) { return std::pow(S(x), r) * u.eval(x); },
                     t0, tn, cfg, merged_splits(h, u, w));
  if (domain_cap > tn) {
    const double tail = integrate(
        [&](double x) { return std::pow(A(x), r) * u.eval(x); }, tn, domain_cap,
        cfg, merged_splits(h, u, w));
    total += std::pow(ptot, r) * tail;
  }
  return guard_overflow(std::pow(total, 1.0 / r));
}

double lhs_discrete_blocks(const TestFunction& h, const CoveringSequence& cs,
                           const WeightSpec& w, double q, double r,
                           const QuadConfig& cfg, double domain_cap) {
  if (h.is_zero()) return 0.0;
  const double t0 = h.breakpoints.front();
  const double tn = h.breakpoints.back();
  double acc = 0.0;
  for (int k = cs.k_min; k <= cs.last_block_index(); ++k) {
    const double a = cs.x(k);
    double b = std::min(cs.block_end(k), domain_cap);
    if (a >= tn || b <= a) continue;  // no h-mass can accumulate in the block
    auto integrand = [&](double t) {
      return std::pow(h.primitive_from(a, t), q) * w.eval(t);
    };
    double block = 0.0;
    const double mid_hi = std::min(b, tn);
    if (mid_hi > std::max(a, t0)) {
      std::vector<double> splits = h.breakpoints;
      for (double x : w.interior_breakpoints()) splits.push_back(x);
      block += integrate(integrand, std::max(a, t0), mid_hi, cfg, splits);
    }
    if (b > tn) {
      const double tail_w = capped_upper(w, tn, domain_cap) -
                            (b == kInf ? 0.0 : capped_upper(w, b, domain_cap));
      if (tail_w == kInf) return kInf;
      block += std::pow(h.primitive_from(a, tn), q) * tail_w;
    }
    if (block == kInf) return kInf;
    // Each term of the l^r sum is 2^{k/r} block^{1/q}, so term^r = 2^k block^{r/q}.
    if (block > 0.0) acc += std::ldexp(1.0, k) * std::pow(block, r / q);
  }
  return guard_overflow(std::pow(acc, 1.0 / r));
}

EquivalenceBreakdown equivalence_decomposition(const TestFunction& h,
                                               const WeightSpec& u,
                                               const WeightSpec& w, double q,
                                               double r, const CoveringSequence& cs,
                                               const QuadConfig& cfg) {
  EquivalenceBreakdown eb{};
  eb.lhs_full = lhs_main(h, u, w, q, r, cfg);
  eb.term_discrete = lhs_discrete_blocks(h, cs, w, q, r, cfg);
  eb.term_sup = lhs_sup(h, u, w, q, r, cfg);
  const double mx = std::max(eb.term_discrete, eb.term_sup);
  const double sum = eb.term_discrete + eb.term_sup;
  auto ratio = [](double num, double den) {
    if (num == 0.0 && den == 0.0) return 1.0;
    if (den == 0.0) return kInf;
    return num / den;
  };
  eb.ratio_lower = ratio(eb.lhs_full, mx);
  eb.ratio_upper = ratio(sum, eb.lhs_full);
  return eb;
}

}  // namespace hardycheck
