#include "hardycheck/bestconst.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hardycheck/errors.hpp"

namespace hardycheck {

std::string target_name(Target t) {
  switch (t) {
    case Target::main: return "main";
    case Target::sup: return "sup";
    default: return "discrete";
  }
}

Target parse_target(const std::string& s) {
  if (s == "main") return Target::main;
  if (s == "sup") return Target::sup;
  if (s == "discrete") return Target::discrete;
  throw ParseError("unknown target: " + s);
}

void OptimizerConfig::validate() const {
  if (grid_cells < 8) throw std::invalid_argument("OptimizerConfig: grid_cells < 8");
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw std::invalid_argument("OptimizerConfig: need 0 < t_min < t_max");
  if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts < 1");
}

double lrho_norm(const std::vector<double>& seq, double rho) {
  if (seq.empty()) return 0.0;
  if (rho == kInf) return *std::max_element(seq.begin(), seq.end());
  double acc = 0.0;
  for (double s : seq) {
    if (s == kInf) return kInf;
    acc += std::pow(s, rho);
  }
  return guard_overflow(std::pow(acc, 1.0 / rho));
}

double discrete_embedding_constant(const std::vector<double>& v_seq,
                                   const std::vector<double>& w_seq, double p,
                                   double r) {
  if (v_seq.size() != w_seq.size() || v_seq.empty())
    throw std::invalid_argument("discrete_embedding_constant: bad sequences");
  const double rho = dual_and_rho(p, r).second;
  std::vector<double> ratio(v_seq.size());
  for (size_t i = 0; i < v_seq.size(); ++i) ratio[i] = w_seq[i] / v_seq[i];
  return lrho_norm(ratio, rho);
}

namespace {

double seq_ratio(const std::vector<double>& a, const std::vector<double>& v_seq,
                 const std::vector<double>& w_seq, double p, double r) {
  std::vector<double> num(a.size()), den(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    num[i] = a[i] * w_seq[i];
    den[i] = a[i] * v_seq[i];
  }
  const double d = lrho_norm(den, p);
  if (d == 0.0) return 0.0;
  return lrho_norm(num, r) / d;
}

/// Multiplicative coordinate ascent of `ratio` from `x`; returns best value.
template <typename Ratio>
double coordinate_ascent(std::vector<double>& x, const Ratio& ratio,
                         const std::vector<double>& steps, int max_sweeps) {
  double best = ratio(x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (size_t i = 0; i < x.size(); ++i) {
      for (double s0 : steps) {
        for (double s : {s0, 1.0 / s0}) {
          const double saved = x[i];
          x[i] = saved * s;
          const double cand = ratio(x);
          if (cand > best * (1.0 + 1e-12)) {
            best = cand;
            improved = true;
          } else {
            x[i] = saved;
          }
        }
      }
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

double discrete_embedding_bruteforce(const std::vector<double>& v_seq,
                                     const std::vector<double>& w_seq, double p,
                                     double r, unsigned seed) {
  if (v_seq.size() != w_seq.size() || v_seq.empty())
    throw std::invalid_argument("discrete_embedding_bruteforce: bad sequences");
  const size_t n = v_seq.size();
  const double rho = dual_and_rho(p, r).second;
  auto ratio = [&](const std::vector<double>& a) {
    return seq_ratio(a, v_seq, w_seq, p, r);
  };
  const std::vector<double> steps = {2.0, 1.1, 1.01, 1.0001};

  double best = 0.0;
  // Hoelder-sharp profile: (a_k v_k)^p proportional to (w_k/v_k)^rho.
  if (rho != kInf) {
    std::vector<double> a(n);
    for (size_t i = 0; i < n; ++i)
      a[i] = std::pow(w_seq[i] / v_seq[i], rho / p) / v_seq[i];
    best = std::max(best, coordinate_ascent(a, ratio, steps, 200));
  }
  // Single-index candidates catch the l^inf case exactly.
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> a(n, 0.0);
    a[i] = 1.0;
    best = std::max(best, ratio(a));
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  for (int rs = 0; rs < 8; ++rs) {
    std::vector<double> a(n);
    for (double& x : a) x = std::pow(10.0, logu(rng));
    best = std::max(best, coordinate_ascent(a, ratio, steps, 200));
  }
  return best;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int cells) {
  std::vector<double> bps(cells + 1);
  const double ll = std::log(lo), step = (std::log(hi) - ll) / cells;
  for (int i = 0; i <= cells; ++i) bps[i] = std::exp(ll + i * step);
  bps.front() = lo;
  bps.back() = hi;
  return bps;
}

/// Finite right endpoint for optimizing over a block whose end is +inf:
/// essentially all of the block's w-mass must lie below it.
double effective_block_end(const WeightSpec& w, double a, const QuadConfig&) {
  const double lo_mass = (a > 0.0) ? w.lower_integral(a) : 0.0;
  if (w.tail_finite()) {
    const double tail = w.upper_integral(a);
    if (tail > 0.0) {
      const double target = lo_mass + tail * (1.0 - 1e-9);
      double hi = std::max(1.0, 2.0 * std::max(a, 1.0));
      while (w.lower_integral(hi) < target && hi < 1e18) hi *= 2.0;
      return solve_monotone([&](double x) { return w.lower_integral(x); }, target,
                            std::max(a, 1e-300), hi, 1e-6, 0.0);
    }
  }
  return std::max(1.0, a) * 1e3;
}

}  // namespace

TestFunction block_extremizer(const WeightSpec& v, const WeightSpec& w, double p,
                              double q, double a, double b, int cells,
                              const QuadConfig& cfg) {
  if (!(a < b)) throw std::invalid_argument("block_extremizer: need a < b");
  const double b_eff = (b == kInf) ? effective_block_end(w, a, cfg) : b;
  const double lo = (a > 0.0) ? a : b_eff * 1e-9;
  std::vector<double> bps = log_grid(lo, b_eff, cells);
  if (a == 0.0) bps.front() = 1e-300;  // support in (0, b)

  auto make = [&](const std::vector<double>& vals) {
    return TestFunction(bps, vals);
  };
  auto ratio = [&](const std::vector<double>& vals) -> double {
    TestFunction h = make(vals);
    const double den = rhs_norm(h, v, p);
    if (den == 0.0) return 0.0;
    auto integrand = [&](double t) {
      return std::pow(h.primitive_from(a, t), q) * w.eval(t);
    };
    std::vector<double> splits = h.breakpoints;
    for (double x : w.interior_breakpoints()) splits.push_back(x);
    const double num = integrate(integrand, a, b == kInf ? kInf : b, cfg, splits);
    if (num == kInf) return kInf;
    return std::pow(num, 1.0 / q) / den;
  };

  // Seed with the dual-power profile v^{1-p'} (1/v for p = 1) truncated at
  // each prefix of the grid; keep the best, then refine by coordinate ascent.
  const double p_dual_exp = (p > 1.0) ? 1.0 - p / (p - 1.0) : -1.0;
  std::vector<double> profile(cells);
  for (int i = 0; i < cells; ++i) {
    const double mid = std::sqrt(bps[i] * bps[i + 1]);
    profile[i] = std::pow(std::max(v.eval(mid), 1e-300), p_dual_exp);
  }
  std::vector<double> best_vals(cells, 1.0);
  double best = ratio(best_vals);
  for (int cut = 1; cut <= cells; ++cut) {
    std::vector<double> vals(cells, 0.0);
    for (int i = 0; i < cut; ++i) vals[i] = profile[i];
    const double cand = ratio(vals);
    if (cand > best) {
      best = cand;
      best_vals = vals;
    }
  }
  if (best == 0.0) {
    // No w-mass in the block: the normalized indicator, ratio 0.
    std::vector<double> vals(cells, 1.0);
    TestFunction h = make(vals);
    return h.scaled(1.0 / rhs_norm(h, v, p));
  }
  coordinate_ascent(best_vals, ratio, {2.0, 1.1, 1.01}, 30);
  TestFunction h = make(best_vals);
  return h.scaled(1.0 / rhs_norm(h, v, p));
}

BestConstantEstimate estimate_best_constant(const WeightSpec& u,
                                            const WeightSpec& v,
                                            const WeightSpec& w, double p,
                                            double q, double r, Target target,
                                            const OptimizerConfig& opt,
                                            const QuadConfig& cfg) {
  opt.validate();
  const bool truncated = !w.tail_finite();
  const double cap = truncated ? opt.t_max : kInf;

  // A covering sequence is needed only for the block-norm target.
  CoveringSequence cs;
  if (target == Target::discrete) cs = build_covering(u, -10, 10, cfg, true);

  const std::vector<double> bps = log_grid(opt.t_min, opt.t_max, opt.grid_cells);
  auto lhs = [&](const TestFunction& h) -> double {
    switch (target) {
      case Target::main: return lhs_main(h, u, w, q, r, cfg, cap);
      case Target::sup: return lhs_sup(h, u, w, q, r, cfg, cap);
      default: return lhs_discrete_blocks(h, cs, w, q, r, cfg, cap);
    }
  };
  auto ratio_of = [&](const TestFunction& h) -> double {
    const double den = rhs_norm(h, v, p);
    if (den == 0.0) return 0.0;
    return lhs(h) / den;
  };
  auto grid_ratio = [&](const std::vector<double>& vals) -> double {
    return ratio_of(TestFunction(bps, vals));
  };

  BestConstantEstimate est;
  est.target = target;
  est.truncated_domain = truncated;
  double best = 0.0;
  TestFunction best_h(bps, std::vector<double>(opt.grid_cells, 1.0));
  auto consider = [&](const TestFunction& h) {
    const double c = ratio_of(h);
    if (c > best) {
      best = c;
      best_h = h;
    }
    return c;
  };

  // Seeded candidates: constant-one, single-cell indicators, block extremizers.
  consider(TestFunction(bps, std::vector<double>(opt.grid_cells, 1.0)));
  for (int i = 0; i < opt.grid_cells; ++i) {
    std::vector<double> vals(opt.grid_cells, 0.0);
    vals[i] = 1.0;
    consider(TestFunction(bps, vals));
  }
  try {
    CoveringSequence seed_cs = build_covering(u, -3, 3, cfg, true);
    for (int k = seed_cs.k_min; k <= seed_cs.last_block_index(); ++k) {
      consider(block_extremizer(v, w, p, q, seed_cs.x(k),
                                std::min(seed_cs.block_end(k), cap), 12, cfg));
    }
  } catch (const std::exception&) {
    // Degenerate u-mass or unbracketable covering points: skip these seeds.
  }

  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  for (int rs = 0; rs < opt.restarts; ++rs) {
    std::vector<double> vals(opt.grid_cells, 1.0);
    if (rs > 0)
      for (double& x : vals) x = std::pow(10.0, logu(rng));
    else if (best > 0.0)
      vals = best_h.breakpoints == bps ? best_h.values : vals;
    const double got = coordinate_ascent(vals, grid_ratio, opt.step_schedule,
                                         opt.max_iters);
    est.trace.push_back(got);
    consider(TestFunction(bps, vals));
  }

  if (best == 0.0)
    throw DegenerateProblemError("estimate_best_constant: every candidate gave ratio 0");
  est.value = best;
  est.argmax_h = best_h;
  return est;
}

}  // namespace hardycheck
