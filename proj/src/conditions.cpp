#include "hardycheck/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardycheck {

ConditionEntry ConditionEntry::of(double v) {
  ConditionEntry e;
  e.value = v;
  e.finite = std::isfinite(v) && v < kOverflowGuard;
  e.defined = true;
  return e;
}

ConditionEntry ConditionEntry::undefined() {
  ConditionEntry e;
  e.value = std::numeric_limits<double>::quiet_NaN();
  e.finite = false;
  e.defined = false;
  return e;
}

char classify_regime(double p, double q, double r) {
  if (p <= q) return p <= r ? 'a' : 'b';
  return p <= r ? 'c' : 'd';
}

namespace {

double domain_hi(const QuadConfig& cfg) { return std::exp(cfg.log_hi); }

inline double mul_inf(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

/// Product under the 0*inf = 0 convention: a vanishing factor wins over a
/// diverging (or overflow-guarded) one. Finite factors are multiplied first
/// so that a product of decaying terms that underflows to zero also wins.
inline double prod0(std::initializer_list<double> factors) {
  double acc = 1.0;
  bool seen_inf = false;
  for (double f : factors) {
    if (f == kInf) { seen_inf = true; continue; }
    acc *= f;
  }
  if (acc == 0.0) return 0.0;
  return seen_inf ? kInf : acc;
}

/// True if `prod` is still rising where it is last representable, i.e. at the
/// largest x in [lo, hi] (on a fine geometric lattice) where the value is
/// positive and finite. Exponential decay in a factor often underflows to an
/// exact 0 far inside the clipped domain, so probing the clip boundary itself
/// sees 0 even when the true product grows without bound. For the supported
/// power/exponential profiles the log-slope is eventually monotone, so a rise
/// at the cliff means the supremum over (0,inf) diverges.
bool rising_at_cliff(const ScalarFn& prod, const QuadConfig& cfg,
                     double lo_bound = 0.0) {
  const double step = std::exp(0.125);  // ~18 probes per decade
  const double lo = std::max(std::exp(cfg.log_lo), lo_bound);
  double xc = domain_hi(cfg);
  double pc = prod(xc);
  while ((pc == 0.0 || pc == kInf || std::isnan(pc)) && xc > lo * step) {
    xc /= step;
    pc = prod(xc);
  }
  if (!(pc > 0.0) || pc == kInf) return false;
  const double pm = prod(xc / step);
  if (!(pm > 0.0) || pm == kInf) return false;
  return pc > pm * (1.0 + 1e-6);
}

/// Supremum over (0,inf) of A(x)B(x), A non-increasing and B non-decreasing.
/// The numerical domain is clipped at e^{log_hi}; a product still rising at
/// the representability cliff diverges, so report +inf.
double sup_tail_aware(const ScalarFn& A, const ScalarFn& B, const QuadConfig& cfg) {
  auto prod = [&](double x) { return mul_inf(A(x), B(x)); };
  const double s = sup_on(prod, 0.0, kInf, cfg);
  if (s == kInf) return kInf;
  if (rising_at_cliff(prod, cfg)) return kInf;
  return s;
}

/// Cached suffix integrals T(x) = \int_x^inf f on a geometric grid; arbitrary
/// arguments cost one short local quadrature down to the next grid point.
class TailProfile {
 public:
  TailProfile(ScalarFn f, const QuadConfig& cfg, int per_decade = 8)
      : f_(std::move(f)), cfg_(cfg) {
    const double lo = std::exp(cfg.log_lo), hi = std::exp(cfg.log_hi);
    const int n = std::max(8, static_cast<int>(per_decade * std::log10(hi / lo)));
    grid_.reserve(n + 1);
    const double llo = std::log(lo), step = (std::log(hi) - llo) / n;
    for (int i = 0; i <= n; ++i) grid_.push_back(std::exp(llo + i * step));
    suffix_.assign(grid_.size(), 0.0);
    double acc = integrate(f_, grid_.back(), kInf, cfg_);
    suffix_.back() = acc;
    for (size_t i = grid_.size() - 1; i-- > 0;) {
      if (acc != kInf) {
        const double cell = integrate(f_, grid_[i], grid_[i + 1], cfg_);
        acc = (cell == kInf) ? kInf : acc + cell;
      }
      suffix_[i] = acc;
    }
  }

  double operator()(double x) const {
    if (x <= grid_.front()) {
      if (suffix_.front() == kInf) return kInf;
      return suffix_.front() + integrate(f_, x, grid_.front(), cfg_);
    }
    if (x >= grid_.back()) return integrate(f_, x, kInf, cfg_);
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const size_t j = static_cast<size_t>(it - grid_.begin());  // x < grid_[j]
    if (suffix_[j] == kInf) return kInf;
    return suffix_[j] + integrate(f_, x, grid_[j], cfg_);
  }

  double total() const { return (*this)(0.0); }

 private:
  ScalarFn f_;
  QuadConfig cfg_;
  std::vector<double> grid_;
  std::vector<double> suffix_;
};

/// Cached Phi(x) = sup_{t in [x,inf)} A(t)B(t) for A non-increasing and B
/// non-decreasing: per-cell suprema plus a right-to-left cumulative max.
class SupProfile {
 public:
  SupProfile(ScalarFn A, ScalarFn B, const QuadConfig& cfg, int per_decade = 8)
      : A_(std::move(A)), B_(std::move(B)) {
    const double lo = std::exp(cfg.log_lo), hi = std::exp(cfg.log_hi);
    const int n = std::max(8, static_cast<int>(per_decade * std::log10(hi / lo)));
    grid_.reserve(n + 1);
    const double llo = std::log(lo), step = (std::log(hi) - llo) / n;
    for (int i = 0; i <= n; ++i) grid_.push_back(std::exp(llo + i * step));
    suffix_.assign(grid_.size(), 0.0);
    // Boundary cell [grid.back(), inf): a product still rising at the
    // representability cliff diverges for the supported profiles.
    auto prod = [this](double x) { return mul_inf(A_(x), B_(x)); };
    suffix_.back() =
        rising_at_cliff(prod, cfg) ? kInf : mul_inf(A_(grid_.back()), B_(grid_.back()));
    for (size_t i = grid_.size() - 1; i-- > 0;) {
      const double cell = (suffix_[i + 1] == kInf)
                              ? kInf
                              : sup_product(A_, B_, grid_[i], grid_[i + 1]);
      suffix_[i] = std::max(suffix_[i + 1], cell);
    }
  }

  double operator()(double x) const {
    if (x <= grid_.front()) return suffix_.front();
    if (x >= grid_.back()) return suffix_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const size_t j = static_cast<size_t>(it - grid_.begin());
    if (suffix_[j] == kInf) return kInf;
    return std::max(suffix_[j], sup_product(A_, B_, x, grid_[j]));
  }

 private:
  ScalarFn A_;
  ScalarFn B_;
  std::vector<double> grid_;
  std::vector<double> suffix_;
};

/// sigma_p(v, p, 0, x) with the inner integral cached on a geometric grid:
/// arbitrary arguments cost one short local quadrature from the previous grid
/// point instead of a full integral from 0.
class PrefixSigma {
 public:
  PrefixSigma(const WeightSpec& v, double p, const QuadConfig& cfg)
      : v_(v), p_(p), cfg_(cfg), pd_(dual_and_rho(p, p).first) {
    if (p_ == 1.0) return;  // esssup form: per-call closed piece suprema
    const double lo = std::exp(cfg.log_lo), hi = std::exp(cfg.log_hi);
    const int n = std::max(8, static_cast<int>(8 * std::log10(hi / lo)));
    grid_.reserve(n + 1);
    const double llo = std::log(lo), step = (std::log(hi) - llo) / n;
    for (int i = 0; i <= n; ++i) grid_.push_back(std::exp(llo + i * step));
    // Prefix sums are kept as logs: v^{1-p'} can be a growing exponential
    // whose prefix integral leaves double range long before the weighted
    // factors it multiplies have decayed to zero.
    lprefix_.assign(grid_.size(), 0.0);
    double lacc = inc_log(0.0, grid_.front());
    lprefix_.front() = lacc;
    for (size_t i = 1; i < grid_.size(); ++i) {
      if (lacc != kInf) {
        const double cell = inc_log(grid_[i - 1], grid_[i]);
        lacc = (cell == kInf) ? kInf : log_add(lacc, cell);
      }
      lprefix_[i] = lacc;
    }
  }

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (p_ == 1.0) return sigma_p(v_, p_, 0.0, x, cfg_);
    double lraw;
    if (x <= grid_.front()) {
      lraw = inc_log(0.0, x);
    } else if (x >= grid_.back()) {
      lraw = (lprefix_.back() == kInf)
                 ? kInf
                 : log_add(lprefix_.back(), inc_log(grid_.back(), x));
    } else {
      const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
      const size_t j = static_cast<size_t>(it - grid_.begin());  // x < grid_[j]
      lraw = (lprefix_[j - 1] == kInf)
                 ? kInf
                 : log_add(lprefix_[j - 1], inc_log(grid_[j - 1], x));
    }
    if (lraw == kInf) return kInf;
    if (lraw == -kInf) return 0.0;
    return std::exp(lraw / pd_);
  }

 private:
  static double log_add(double la, double lb) {
    if (la == -kInf) return lb;
    if (lb == -kInf) return la;
    const double m = std::max(la, lb);
    return m + std::log1p(std::exp(std::min(la, lb) - m));
  }

  // log of \int_a^b v^{1-p'}, summed piecewise in log space.
  double inc_log(double a, double b) const {
    if (!(b > a)) return -kInf;
    const double s = 1.0 - pd_;  // negative
    double lacc = -kInf;
    for (const Piece& pc : v_.pieces()) {
      const double l = std::max(pc.lo, a);
      const double u = std::min(pc.hi, b);
      if (!(l < u)) continue;
      Piece tp{pc.lo, pc.hi, std::pow(pc.scale, s), pc.pow * s, pc.rate * s};
      const double cell = piece_integral_log(tp, l, u, cfg_);
      if (cell == kInf) return kInf;
      lacc = log_add(lacc, cell);
    }
    return lacc;
  }

  const WeightSpec& v_;
  double p_;
  QuadConfig cfg_;
  double pd_;
  std::vector<double> grid_;
  std::vector<double> lprefix_;
};

double block_sup_constant(const WeightSpec& v, const WeightSpec& w_, double p,
                          double q, double a, double b, const QuadConfig& cfg) {
  auto wtail = [&](double x) {
    if (b == kInf) return w_.upper_integral(x);
    if (x >= b) return 0.0;
    return w_.lower_integral(b) - w_.lower_integral(x);
  };
  ScalarFn A = [&](double x) { return std::pow(wtail(x), 1.0 / q); };
  ScalarFn B = [&](double x) { return sigma_p(v, p, a, x, cfg); };
  const double s = sup_on([&](double x) { return mul_inf(A(x), B(x)); }, a, b,
                          cfg, w_.interior_breakpoints());
  if (s == kInf || b != kInf) return s;
  if (rising_at_cliff([&](double x) { return mul_inf(A(x), B(x)); }, cfg, a))
    return kInf;
  return s;
}

double block_int_constant(const WeightSpec& v, const WeightSpec& w_, double p,
                          double q, double a, double b, const QuadConfig& cfg) {
  auto wtail = [&](double x) {
    if (b == kInf) return w_.upper_integral(x);
    if (x >= b) return 0.0;
    return w_.lower_integral(b) - w_.lower_integral(x);
  };
  const double e_w = q / (p - q);
  const double e_s = p * q / (p - q);
  auto integrand = [&](double x) {
    return prod0({std::pow(wtail(x), e_w), w_.eval(x),
                  std::pow(sigma_p(v, p, a, x, cfg), e_s)});
  };
  const double val = integrate(integrand, a, b, cfg, w_.interior_breakpoints());
  if (val == kInf) return kInf;
  return guard_overflow(std::pow(val, (p - q) / (p * q)));
}

}  // namespace

double hardy_block_constant(const WeightSpec& v, const WeightSpec& w_, double p,
                            double q, double a, double b, const QuadConfig& cfg) {
  if (!(a < b)) throw std::invalid_argument("hardy_block_constant: need a < b");
  return (p <= q) ? block_sup_constant(v, w_, p, q, a, b, cfg)
                  : block_int_constant(v, w_, p, q, a, b, cfg);
}

ConditionMap compute_C_sup(const ScalarFn& uf, const WeightSpec& m,
                           const WeightSpec& v, double p, double r,
                           const QuadConfig& cfg) {
  ConditionMap out;
  PrefixSigma sigma_prof(v, p, cfg);
  auto sigma = [&](double x) { return sigma_prof(x); };
  auto M = [&](double x) { return m.lower_integral(x); };

  // C1 = sup_x (\int_0^x m)^{1/r} uf(x) sigma_p(0,x)
  {
    ScalarFn A = uf;
    ScalarFn B = [&](double x) { return std::pow(M(x), 1.0 / r) * sigma(x); };
    out["C1"] = ConditionEntry::of(sup_tail_aware(A, B, cfg));
  }

  // G(x) = \int_x^inf uf^r m, shared by C2 and C4.
  TailProfile G([&](double t) { return mul_inf(std::pow(uf(t), r), m.eval(t)); }, cfg);

  // C2 = sup_x (\int_x^inf uf^r m)^{1/r} sigma_p(0,x)
  {
    ScalarFn A = [&](double x) { return std::pow(G(x), 1.0 / r); };
    ScalarFn B = sigma;
    out["C2"] = ConditionEntry::of(sup_tail_aware(A, B, cfg));
  }

  if (r < p) {
    const double e_out = (p - r) / (p * r);
    // C3 = (\int [sup_{t>=x} uf(t) sigma(t)]^{pr/(p-r)} (\int_0^x m)^{r/(p-r)} m dx)^{(p-r)/(pr)}
    {
      SupProfile phi(uf, sigma, cfg);
      auto integrand = [&](double x) {
        return prod0({std::pow(phi(x), p * r / (p - r)),
                      std::pow(M(x), r / (p - r)), m.eval(x)});
      };
      const double val = integrate(integrand, 0.0, kInf, cfg, m.interior_breakpoints());
      out["C3"] = ConditionEntry::of(
          val == kInf ? kInf : guard_overflow(std::pow(val, e_out)));
    }
    // C4 = (\int (\int_x^inf uf^r m)^{r/(p-r)} uf(x)^r sigma(x)^{pr/(p-r)} m dx)^{(p-r)/(pr)}
    {
      auto integrand = [&](double x) {
        return prod0({std::pow(G(x), r / (p - r)), std::pow(uf(x), r),
                      std::pow(sigma(x), p * r / (p - r)), m.eval(x)});
      };
      const double val = integrate(integrand, 0.0, kInf, cfg, m.interior_breakpoints());
      out["C4"] = ConditionEntry::of(
          val == kInf ? kInf : guard_overflow(std::pow(val, e_out)));
    }
  } else {
    out["C3"] = ConditionEntry::undefined();
    out["C4"] = ConditionEntry::undefined();
  }
  return out;
}

ConditionMap compute_D(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg) {
  ScalarFn uf = [&w, q](double y) { return std::pow(w.upper_integral(y), 1.0 / q); };
  ConditionMap c = compute_C_sup(uf, u, v, p, r, cfg);
  ConditionMap out;
  out["D1"] = c["C1"];
  out["D2"] = c["C2"];
  out["D3"] = c["C3"];
  out["D4"] = c["C4"];
  return out;
}

ConditionMap compute_F(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg) {
  ConditionMap d = compute_D(u, v, w, p, q, r, cfg);
  ConditionMap out;
  out["F1"] = d["D1"];
  out["F2"] = d["D2"];
  out["F3"] = d["D3"];
  out["F4"] = d["D4"];

  if (q < p) {
    PrefixSigma sigma_prof(v, p, cfg);
    auto sigma = [&](double x) { return sigma_prof(x); };
    const double e_w = q / (p - q);
    const double e_s = p * q / (p - q);
    // Psi(t) = \int_t^inf (\int_x^inf w)^{q/(p-q)} w(x) sigma(x)^{pq/(p-q)} dx
    TailProfile psi(
        [&](double x) {
          return prod0({std::pow(w.upper_integral(x), e_w), w.eval(x),
                        std::pow(sigma(x), e_s)});
        },
        cfg);
    // F5 = sup_t (\int_0^t u)^{1/r} Psi(t)^{(p-q)/(pq)}
    {
      ScalarFn A = [&](double t) {
        const double ps = psi(t);
        return ps == kInf ? kInf : std::pow(ps, (p - q) / (p * q));
      };
      ScalarFn B = [&](double t) { return std::pow(u.lower_integral(t), 1.0 / r); };
      out["F5"] = ConditionEntry::of(sup_tail_aware(A, B, cfg));
    }
    // F6 = (\int (\int_0^t u)^{r/(p-r)} u(t) Psi(t)^{r(p-q)/(q(p-r))} dt)^{(p-r)/(pr)}
    if (r < p) {
      const double e_psi = r * (p - q) / (q * (p - r));
      auto integrand = [&](double t) {
        return prod0({std::pow(u.lower_integral(t), r / (p - r)), u.eval(t),
                      std::pow(psi(t), e_psi)});
      };
      const double val = integrate(integrand, 0.0, kInf, cfg, u.interior_breakpoints());
      out["F6"] = ConditionEntry::of(
          val == kInf ? kInf : guard_overflow(std::pow(val, (p - r) / (p * r))));
    } else {
      out["F6"] = ConditionEntry::undefined();
    }
  } else {
    out["F5"] = ConditionEntry::undefined();
    out["F6"] = ConditionEntry::undefined();
  }
  return out;
}

ConditionMap compute_B(const WeightSpec& u, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg) {
  ConditionMap f = compute_F(u, v, w, p, q, r, cfg);
  ConditionMap out;
  out["B1"] = f["F1"];
  out["B3"] = f["F5"];
  out["B4"] = f["F6"];

  if (r < p) {
    PrefixSigma sigma_prof(v, p, cfg);
    auto sigma = [&](double x) { return sigma_prof(x); };
    // Theta(t) = sup_{x in (t,inf)} (\int_x^inf w)^{1/q} sigma(x)
    ScalarFn A = [&](double x) { return std::pow(w.upper_integral(x), 1.0 / q); };
    SupProfile theta(A, sigma, cfg);
    auto integrand = [&](double t) {
      return prod0({std::pow(u.lower_integral(t), r / (p - r)), u.eval(t),
                    std::pow(theta(t), p * r / (p - r))});
    };
    const double val = integrate(integrand, 0.0, kInf, cfg, u.interior_breakpoints());
    out["B2"] = ConditionEntry::of(
        val == kInf ? kInf : guard_overflow(std::pow(val, (p - r) / (p * r))));
  } else {
    out["B2"] = ConditionEntry::undefined();
  }
  return out;
}

ConditionMap compute_A(const CoveringSequence& cs, const WeightSpec& v,
                       const WeightSpec& w, double p, double q, double r,
                       const QuadConfig& cfg, bool* truncation_warning) {
  const double rho = dual_and_rho(p, r).second;
  auto norm_of = [&](const std::vector<double>& terms) {
    if (terms.empty()) return 0.0;
    if (rho == kInf) return *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) {
      if (t == kInf) return kInf;
      acc += std::pow(t, rho);
    }
    return guard_overflow(std::pow(acc, 1.0 / rho));
  };

  auto block_terms = [&](bool sup_form) {
    std::vector<double> terms;
    for (int k = cs.k_min; k <= cs.last_block_index(); ++k) {
      const double a = cs.x(k), b = cs.block_end(k);
      const double c = sup_form ? block_sup_constant(v, w, p, q, a, b, cfg)
                                : block_int_constant(v, w, p, q, a, b, cfg);
      terms.push_back(std::pow(std::ldexp(1.0, k), 1.0 / r) * c);
    }
    return terms;
  };

  ConditionMap out;
  bool warn = false;
  auto finish = [&](const std::vector<double>& terms) {
    const double n = norm_of(terms);
    if (n > 0.0 && n != kInf && terms.size() >= 2) {
      if (terms.front() >= 0.01 * n || terms.back() >= 0.01 * n) warn = true;
    }
    return ConditionEntry::of(n);
  };
  out["A1"] = finish(block_terms(true));
  out["A2"] = (q < p) ? finish(block_terms(false)) : ConditionEntry::undefined();
  if (truncation_warning) *truncation_warning = warn;
  return out;
}

double combined_constant(const ConditionReport& report) {
  auto get = [&](const char* name) { return report.F.at(name); };
  ConditionEntry lhs, rhs;
  switch (report.regime) {
    case 'a': lhs = get("F1"); rhs = get("F2"); break;
    case 'b': lhs = get("F3"); rhs = get("F4"); break;
    case 'c': lhs = get("F2"); rhs = get("F5"); break;
    default:  lhs = get("F4"); rhs = get("F6"); break;
  }
  if (!lhs.finite || !rhs.finite) return kInf;
  return lhs.value + rhs.value;
}

ConditionReport condition_report(const WeightSpec& u, const WeightSpec& v,
                                 const WeightSpec& w, double p, double q,
                                 double r, const CoveringSequence* cs,
                                 const QuadConfig& cfg) {
  ConditionReport rep;
  rep.regime = classify_regime(p, q, r);
  rep.F = compute_F(u, v, w, p, q, r, cfg);
  rep.D = compute_D(u, v, w, p, q, r, cfg);
  rep.B = compute_B(u, v, w, p, q, r, cfg);
  {
    ScalarFn uf = [&w, q](double y) { return std::pow(w.upper_integral(y), 1.0 / q); };
    ConditionMap c = compute_C_sup(uf, u, v, p, r, cfg);
    rep.C_sup = std::move(c);
  }
  if (cs != nullptr)
    rep.A = compute_A(*cs, v, w, p, q, r, cfg, &rep.a_truncation_warning);
  rep.combined = combined_constant(rep);
  return rep;
}

}  // namespace hardycheck
