// Acceptance gate: one line "criterion N: PASS/FAIL ..." per criterion,
// nonzero exit iff any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hardycheck/bestconst.hpp"
#include "hardycheck/conditions.hpp"
#include "hardycheck/covering.hpp"
#include "hardycheck/functionals.hpp"
#include "hardycheck/quad.hpp"
#include "hardycheck/weights.hpp"

using namespace hardycheck;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

bool same_bits(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) ||
         std::memcmp(&a, &b, sizeof(double)) == 0;
}

struct Problem {
  WeightSpec u, v, w;
  double p, q, r;
};

const std::array<std::array<double, 3>, 4> kRegimeReps = {
    {{1.0, 1.0, 1.0}, {2.0, 4.0, 1.0}, {2.0, 1.0, 4.0}, {3.0, 1.0, 0.5}}};

Problem random_exp_problem(std::mt19937& rng, int rep_index) {
  std::uniform_real_distribution<double> uc(0.5, 2.0), ua(0.0, 1.0),
      ub(0.4, 1.8);
  Problem pr{WeightSpec::exp_power(uc(rng), ua(rng), ub(rng)),
             // v stays a pure exponential so sigma_p is finite for every p,
             // including the esssup form at p = 1.
             WeightSpec::exp_power(uc(rng), 0.0, ub(rng)),
             WeightSpec::exp_power(uc(rng), ua(rng), ub(rng)),
             kRegimeReps[static_cast<size_t>(rep_index)][0],
             kRegimeReps[static_cast<size_t>(rep_index)][1],
             kRegimeReps[static_cast<size_t>(rep_index)][2]};
  return pr;
}

Problem random_twopiece_problem(std::mt19937& rng, int rep_index) {
  std::uniform_real_distribution<double> uc(0.5, 2.0), uhead(-0.4, 1.0),
      uu(-2.5, -1.4), uw(-3.6, -2.8);
  Problem pr{
      WeightSpec::piecewise({{1.0, uhead(rng), uc(rng)}, {kInf, uu(rng), uc(rng)}}),
      // v bounded away from 0 near the origin keeps sigma_p finite at p = 1
      // and grows at most polynomially, so the w-tail can dominate it.
      WeightSpec::piecewise({{1.0, 0.0, uc(rng)}, {kInf, 0.3, uc(rng)}}),
      WeightSpec::piecewise({{1.0, uhead(rng), uc(rng)}, {kInf, uw(rng), uc(rng)}}),
      kRegimeReps[static_cast<size_t>(rep_index)][0],
      kRegimeReps[static_cast<size_t>(rep_index)][1],
      kRegimeReps[static_cast<size_t>(rep_index)][2]};
  return pr;
}

TestFunction random_step(std::mt19937& rng, int cells, double lo, double hi) {
  std::uniform_real_distribution<double> ub(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> uv(std::log(0.1), std::log(10.0));
  std::vector<double> bps(static_cast<size_t>(cells) + 1);
  for (double& b : bps) b = std::exp(ub(rng));
  std::sort(bps.begin(), bps.end());
  for (size_t i = 0; i + 1 < bps.size(); ++i)
    if (bps[i + 1] <= bps[i]) bps[i + 1] = bps[i] * 1.01;
  std::vector<double> vals(static_cast<size_t>(cells));
  for (double& v : vals) v = std::exp(uv(rng));
  return TestFunction(std::move(bps), std::move(vals));
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const WeightSpec u = WeightSpec::exp_power(3.0, 0.0, 1.0);
  const CoveringSequence cs = build_covering(u, -20, 1);
  double worst_x = 0.0, worst_block = 0.0;
  for (int k = -20; k <= 1; ++k) {
    const double closed = -std::log1p(-std::ldexp(1.0, k) / 3.0);
    worst_x = std::max(worst_x, rel_err(cs.x(k), closed));
  }
  // Block masses: \int_{x_{k-1}}^{x_k} u = 2^{k-1}, plus the head block.
  worst_block = rel_err(u.lower_integral(cs.x(-20)), std::ldexp(1.0, -20));
  for (int k = -19; k <= 1; ++k) {
    const double mass =
        u.lower_integral(cs.x(k)) - u.lower_integral(cs.x(k - 1));
    worst_block = std::max(worst_block, rel_err(mass, std::ldexp(1.0, k - 1)));
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "covering u=3e^-t: max x_k err " << worst_x << " (tol 1e-10), max block"
     << " err " << worst_block << " (tol 1e-8), " << dt << " s (budget 1 s)";
  detail = os.str();
  return worst_x <= 1e-10 && worst_block <= 1e-8 && dt < 1.0;
}

bool criterion2(std::string& detail) {
  const WeightSpec e = WeightSpec::exp_power(1.0, 0.0, 1.0);
  const TestFunction h({0.0, 1.0}, {1.0});
  const double want_main =
      0.75 - std::exp(-1.0) + 0.25 * std::exp(-2.0);  // hand integration
  const double want_sup = std::exp(-1.0) - 0.5 * std::exp(-2.0);

  auto t0 = std::chrono::steady_clock::now();
  const double got_main = lhs_main(h, e, e, 1.0, 1.0);
  const double t_main = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const double got_sup = lhs_sup(h, e, e, 1.0, 1.0);
  const double t_sup = seconds_since(t0);

  const double em = rel_err(got_main, want_main), es = rel_err(got_sup, want_sup);
  std::ostringstream os;
  os << "lhs_main err " << em << ", lhs_sup err " << es
     << " (tol 1e-6), runtimes " << t_main << "/" << t_sup << " s (budget 1 s)";
  detail = os.str();
  return em <= 1e-6 && es <= 1e-6 && t_main < 1.0 && t_sup < 1.0;
}

// Checks every defined positive-finite entry of `scaled` against
// `base * factor`; entries that are infinite must stay infinite.
bool compare_scaled(const ConditionMap& base, const ConditionMap& scaled,
                    double factor, double tol, double& worst) {
  bool ok = true;
  for (const auto& [name, b] : base) {
    const ConditionEntry s = scaled.at(name);
    if (b.defined != s.defined) return false;
    if (!b.defined) continue;
    if (b.finite != s.finite) return false;
    if (!b.finite || b.value == 0.0) continue;
    const double err = rel_err(s.value, b.value * factor);
    worst = std::max(worst, err);
    ok = ok && err <= tol;
  }
  return ok;
}

bool criterion3(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const double tol = 1e-9;
  const std::array<double, 3> lambdas = {0.125, 5.0, 64.0};
  std::mt19937 rng(90301u);
  const TestFunction h({0.2, 0.7, 1.3}, {1.0, 0.5});
  double worst = 0.0;
  int problems = 0, finite_entries_checked = 0;
  bool ok = true;

  for (int fam = 0; fam < 2 && ok; ++fam) {
    for (int i = 0; i < 20 && ok; ++i) {
      const Problem pr = (fam == 0) ? random_exp_problem(rng, i % 4)
                                    : random_twopiece_problem(rng, i % 4);
      const double lam = lambdas[static_cast<size_t>(i) % 3];
      const ConditionMap base = compute_F(pr.u, pr.v, pr.w, pr.p, pr.q, pr.r);
      for (const auto& [name, e] : base)
        if (e.defined && e.finite && e.value > 0.0) ++finite_entries_checked;

      // w -> lam w: lam^{1/q} on every constant and both left-hand sides.
      ok = ok && compare_scaled(
                     base, compute_F(pr.u, pr.v, pr.w.scaled(lam), pr.p, pr.q, pr.r),
                     std::pow(lam, 1.0 / pr.q), tol, worst);
      // u -> lam u: lam^{1/r}.
      ok = ok && compare_scaled(
                     base, compute_F(pr.u.scaled(lam), pr.v, pr.w, pr.p, pr.q, pr.r),
                     std::pow(lam, 1.0 / pr.r), tol, worst);
      // v -> lam v: lam^{-1/p}.
      ok = ok && compare_scaled(
                     base, compute_F(pr.u, pr.v.scaled(lam), pr.w, pr.p, pr.q, pr.r),
                     std::pow(lam, -1.0 / pr.p), tol, worst);
      // The B-family (including the cumulative-max profile in B2) on a subset.
      if (i % 5 == 0) {
        const ConditionMap bb = compute_B(pr.u, pr.v, pr.w, pr.p, pr.q, pr.r);
        ok = ok && compare_scaled(
                       bb, compute_B(pr.u, pr.v, pr.w.scaled(lam), pr.p, pr.q, pr.r),
                       std::pow(lam, 1.0 / pr.q), tol, worst);
      }

      // Functionals.
      const double lm = lhs_main(h, pr.u, pr.w, pr.q, pr.r);
      const double ls = lhs_sup(h, pr.u, pr.w, pr.q, pr.r);
      const double rn = rhs_norm(h, pr.v, pr.p);
      double e1 = rel_err(lhs_main(h, pr.u, pr.w.scaled(lam), pr.q, pr.r),
                          lm * std::pow(lam, 1.0 / pr.q));
      double e2 = rel_err(lhs_sup(h, pr.u.scaled(lam), pr.w, pr.q, pr.r),
                          ls * std::pow(lam, 1.0 / pr.r));
      double e3 = rel_err(rhs_norm(h, pr.v.scaled(lam), pr.p),
                          rn * std::pow(lam, 1.0 / pr.p));
      worst = std::max({worst, e1, e2, e3});
      ok = ok && e1 <= tol && e2 <= tol && e3 <= tol;
      ++problems;
    }
  }
  std::ostringstream os;
  os << problems << " problems (2 families), " << finite_entries_checked
     << " finite constants, worst scaling err " << worst << " (tol 1e-9), "
     << seconds_since(t0) << " s";
  detail = os.str();
  return ok && problems == 40;
}

bool criterion4(std::string& detail) {
  std::mt19937 rng(90401u);
  double worst_identity = 0.0;
  bool ok = true;

  // (i) F1..F4 agree bit for bit with the iterated-operator family.
  for (int fam = 0; fam < 2; ++fam) {
    for (int rep = 0; rep < 4; ++rep) {
      const Problem pr = (fam == 0) ? random_exp_problem(rng, rep)
                                    : random_twopiece_problem(rng, rep);
      const ConditionMap f = compute_F(pr.u, pr.v, pr.w, pr.p, pr.q, pr.r);
      const ConditionMap d = compute_D(pr.u, pr.v, pr.w, pr.p, pr.q, pr.r);
      for (int k = 1; k <= 4; ++k) {
        const std::string fk = "F" + std::to_string(k);
        const std::string dk = "D" + std::to_string(k);
        ok = ok && same_bits(f.at(fk).value, d.at(dk).value) &&
             f.at(fk).defined == d.at(dk).defined;
      }
      // (iii) sup constants are dominated by their integral companions.
      if (pr.q < pr.p) {
        const double c = std::pow((pr.p - pr.q) / pr.p,
                                  -(pr.p - pr.q) / (pr.p * pr.q));
        if (f.at("F5").finite)
          ok = ok && f.at("F1").value <= c * f.at("F5").value * (1.0 + 1e-9);
        if (f.at("F6").defined && f.at("F6").finite && f.at("F3").defined)
          ok = ok && f.at("F3").value <= c * f.at("F6").value * (1.0 + 1e-9);
      }
    }
  }

  // (ii) Tail-control identity on 50 random (t, w) probes with q < p. The
  // integrals can be ~1e-25 while the check is relative, so drop the absolute
  // quadrature floor for these smooth closed-form integrands.
  QuadConfig qcfg;
  qcfg.abs_tol = 1e-300;
  std::uniform_real_distribution<double> uc(0.3, 3.0), ua(-0.5, 2.0),
      ub(0.2, 2.5), ut(0.05, 8.0), up(1.2, 4.0), ufrac(0.2, 0.9);
  for (int probe = 0; probe < 50; ++probe) {
    const WeightSpec w = WeightSpec::exp_power(uc(rng), ua(rng), ub(rng));
    const double p = up(rng), q = p * ufrac(rng), t = ut(rng);
    const double e_w = q / (p - q);
    const double lhs = integrate(
        [&](double x) { return std::pow(w.upper_integral(x), e_w) * w.eval(x); },
        t, kInf, qcfg);
    const double rhs = (p - q) / p * std::pow(w.upper_integral(t), p / (p - q));
    worst_identity = std::max(worst_identity, rel_err(lhs, rhs));
  }
  ok = ok && worst_identity <= 1e-8;

  std::ostringstream os;
  os << "8 problems bit-identical F/D; 50 tail-control probes, worst err "
     << worst_identity << " (tol 1e-8); sup<=integral dominations hold";
  detail = os.str();
  return ok;
}

bool criterion5(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  // Empirical worst ratio recorded from the first fully passing run of this
  // suite (2026-08-26, worst 1.43117); the criterion bound is 16, the pin
  // guards against regressions with a 5% drift allowance.
  const double kPinnedWorst = 1.43117;
  std::mt19937 rng(90501u);
  double worst = 1.0;
  int runs = 0;
  bool ok = true;

  struct Config {
    WeightSpec u, w;
  };
  const std::vector<Config> configs = {
      {WeightSpec::exp_power(3.0, 0.0, 1.0), WeightSpec::exp_power(1.0, 0.0, 1.0)},
      {WeightSpec::piecewise({{1.0, 0.0, 1.0}, {kInf, -2.5, 1.0}}),
       WeightSpec::piecewise({{1.0, 0.0, 0.7}, {kInf, -3.0, 0.7}})}};

  for (const Config& c : configs) {
    const CoveringSequence cs = build_covering(c.u, -8, 6, {}, true);
    for (const auto& rep : kRegimeReps) {
      const double q = rep[1], r = rep[2];
      for (int i = 0; i < 13; ++i) {
        const TestFunction h = random_step(rng, 6, 0.02, 20.0);
        const EquivalenceBreakdown eb =
            equivalence_decomposition(h, c.u, c.w, q, r, cs);
        if (!(eb.lhs_full > 0.0) || !std::isfinite(eb.lhs_full)) {
          ok = false;
          continue;
        }
        // max(discrete, sup) <= K * lhs and lhs <= K * (discrete + sup).
        const double k1 =
            std::max(eb.term_discrete, eb.term_sup) / eb.lhs_full;
        const double k2 =
            eb.lhs_full / (eb.term_discrete + eb.term_sup);
        worst = std::max({worst, k1, k2});
        ++runs;
      }
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << runs << " step functions, worst equivalence ratio " << worst
     << " (bound 16, pinned " << kPinnedWorst << "), " << dt
     << " s (budget 60 s)";
  detail = os.str();
  return ok && runs >= 100 && worst <= 16.0 &&
         worst <= kPinnedWorst * 1.05 && dt < 60.0;
}

bool criterion6(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const WeightSpec e = WeightSpec::exp_power(1.0, 0.0, 1.0);
  const WeightSpec one = WeightSpec::constant(1.0);
  QuadConfig cfg;
  cfg.rel_tol = 1e-6;  // the acceptance window spans a factor 2500
  OptimizerConfig opt;
  opt.restarts = 2;
  opt.max_iters = 20;

  bool ok = true;
  std::ostringstream os;
  for (const auto& rep : kRegimeReps) {
    const double p = rep[0], q = rep[1], r = rep[2];
    ConditionReport creport;
    creport.regime = classify_regime(p, q, r);
    creport.F = compute_F(e, one, e, p, q, r, cfg);
    const double fsum = combined_constant(creport);
    if (!std::isfinite(fsum)) {
      ok = false;
      os << " regime " << creport.regime << ": F-sum not finite;";
      continue;
    }
    const BestConstantEstimate est =
        estimate_best_constant(e, one, e, p, q, r, Target::main, opt, cfg);
    const double ratio = est.value / fsum;
    os << " " << creport.regime << ": C_est/F-sum " << ratio << ";";
    ok = ok && ratio >= 0.02 && ratio <= 50.0;
  }

  // Divergence witness: w = 1 has an infinite F-sum and the truncated
  // estimate must keep growing with the optimizer domain.
  double prev = 0.0;
  for (double tmax : {10.0, 100.0, 1000.0}) {
    OptimizerConfig dopt = opt;
    dopt.t_max = tmax;
    dopt.restarts = 1;
    dopt.max_iters = 10;
    const BestConstantEstimate est =
        estimate_best_constant(e, one, one, 1.0, 1.0, 1.0, Target::main, dopt, cfg);
    ok = ok && est.truncated_domain;
    if (prev > 0.0) ok = ok && est.value >= 2.0 * prev;
    prev = est.value;
  }
  os << " divergence witness last estimate " << prev;

  const double dt = seconds_since(t0);
  os << "; " << dt << " s (budget 300 s)";
  detail = os.str();
  return ok && dt < 300.0;
}

bool criterion7(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(90701u);
  bool ok = true;

  // Discrete Hoelder, 1000 instances, zero violations beyond 1e-12 slack.
  {
    std::uniform_real_distribution<double> uval(0.0, 2.0), uexp(1.0, 5.0);
    std::uniform_int_distribution<int> ulen(1, 10);
    for (int it = 0; it < 1000; ++it) {
      const int n = ulen(rng);
      std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n)),
          ab(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i)] = uval(rng);
        b[static_cast<size_t>(i)] = uval(rng);
        ab[static_cast<size_t>(i)] =
            a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
      }
      const double rho = uexp(rng), p = uexp(rng);
      const double r = 1.0 / (1.0 / rho + 1.0 / p);
      ok = ok && lrho_norm(ab, r) <=
                     lrho_norm(a, rho) * lrho_norm(b, p) * (1.0 + 1e-12) + 1e-12;
    }
  }

  // Geometric-tail equivalence: the empirical factor stays below the
  // Minkowski/q-subadditivity bound at both instance sizes.
  {
    std::uniform_real_distribution<double> uval(0.0, 1.0);
    for (double alpha : {1.5, 2.0, 4.0}) {
      for (double q : {0.5, 1.0, 2.0}) {
        const double m = std::min(q, 1.0);
        const double K = std::pow(1.0 - std::pow(alpha, -m), -1.0 / m);
        for (int n : {20, 80}) {
          for (int inst = 0; inst < 30; ++inst) {
            std::vector<double> a(static_cast<size_t>(n));
            for (auto& x : a) x = uval(rng);
            a[static_cast<size_t>(inst % n)] += 0.5;
            std::vector<double> direct(a.size()), tails(a.size());
            double suffix = 0.0;
            for (size_t k = a.size(); k-- > 0;) {
              suffix += a[k];
              const double tau = std::pow(alpha, static_cast<double>(k));
              direct[k] = tau * a[k];
              tails[k] = tau * suffix;
            }
            const double lo = lrho_norm(direct, q), hi = lrho_norm(tails, q);
            ok = ok && hi >= lo * (1.0 - 1e-12) && hi <= K * lo * (1.0 + 1e-9);
          }
        }
      }
    }
  }

  // Embedding-norm sharpness for r < p on short instances.
  double worst_gap = 0.0;
  {
    std::uniform_real_distribution<double> uv(0.5, 2.0), uw(0.1, 2.0),
        up(1.2, 4.0), ufrac(0.25, 0.8);
    std::uniform_int_distribution<int> ulen(1, 6);
    for (int inst = 0; inst < 12; ++inst) {
      const int n = ulen(rng);
      std::vector<double> v(static_cast<size_t>(n)), w(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        v[static_cast<size_t>(i)] = uv(rng);
        w[static_cast<size_t>(i)] = uw(rng);
      }
      const double p = up(rng), r = p * ufrac(rng);
      const double norm = discrete_embedding_constant(v, w, p, r);
      const double brute = discrete_embedding_bruteforce(v, w, p, r);
      worst_gap = std::max(worst_gap, rel_err(brute, norm));
    }
    ok = ok && worst_gap <= 1e-6;
  }

  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "1000 Hoelder instances, geometric-tail factors bounded, embedding "
     << "sharpness gap " << worst_gap << " (tol 1e-6), " << dt
     << " s (budget 30 s)";
  detail = os.str();
  return ok && dt < 30.0;
}

bool criterion8(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const WeightSpec u = WeightSpec::exp_power(3.0, 0.0, 1.0);
  const WeightSpec w = WeightSpec::exp_power(1.0, 0.0, 1.0);
  const WeightSpec one = WeightSpec::constant(1.0);
  const double p = 2.0, q = 2.0, r = 2.0;
  const CoveringSequence cs = build_covering(u, -8, 4);

  bool ok = true;
  int blocks = 0;
  double worst_frac = kInf;
  for (int k = cs.k_min; k <= cs.last_block_index(); ++k) {
    const double a = cs.x(k), b = cs.block_end(k);
    const double hbc = hardy_block_constant(one, w, p, q, a, b);
    const TestFunction h = block_extremizer(one, w, p, q, a, b, 12);
    const double num = integrate(
        [&](double x) {
          return std::pow(h.primitive_from(a, x), q) * w.eval(x);
        },
        a, std::min(b, std::exp(46.0)), {}, h.breakpoints);
    const double ratio = std::pow(num, 1.0 / q) / rhs_norm(h, one, p);
    worst_frac = std::min(worst_frac, ratio / hbc);
    ok = ok && ratio >= 0.5 * hbc * (1.0 - 1e-6);
    ++blocks;
  }

  // Discrete constants against term-by-term enumeration (rho = inf here).
  const ConditionMap a_map = compute_A(cs, one, w, p, q, r);
  double direct = 0.0;
  for (int k = cs.k_min; k <= cs.last_block_index(); ++k) {
    direct = std::max(direct,
                      std::pow(std::ldexp(1.0, k), 1.0 / r) *
                          hardy_block_constant(one, w, p, q, cs.x(k),
                                               cs.block_end(k)));
  }
  const double a_err = rel_err(a_map.at("A1").value, direct);
  ok = ok && a_err <= 1e-9;

  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << blocks << " blocks, worst extremizer/block-constant fraction "
     << worst_frac << " (must be >= 0.5), A1 vs enumeration err " << a_err
     << " (tol 1e-9), " << dt << " s (budget 30 s)";
  detail = os.str();
  return ok && blocks >= 10 && dt < 30.0;
}

bool criterion9(std::string& detail) {
#ifndef ACCEPTANCE_CLI_PATH
  detail = "CLI path not provided at build time";
  return false;
#else
  const std::string cli = ACCEPTANCE_CLI_PATH;
  const std::string args =
      " verify --u exp:1,0,1 --v const:1 --w exp:1,0,1 --p 2 --q 1 --r 1"
      " --allow-degenerate --seed 777 --restarts 2 --max-iters 10"
      " --rtol 1e-6 --out ";
  auto run = [&](const std::string& out) {
    const std::string cmd = "\"" + cli + "\"" + args + out;
    return std::system(cmd.c_str());
  };
  const std::string f1 = "acceptance_run1.json", f2 = "acceptance_run2.json";
  const int rc1 = run(f1), rc2 = run(f2);
  std::ifstream s1(f1, std::ios::binary), s2(f2, std::ios::binary);
  std::stringstream b1, b2;
  b1 << s1.rdbuf();
  b2 << s2.rdbuf();
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  const bool same = !b1.str().empty() && b1.str() == b2.str();
  std::ostringstream os;
  os << "verify run twice (exit " << rc1 << "/" << rc2 << "), " << b1.str().size()
     << " bytes, byte-identical: " << (same ? "yes" : "NO");
  detail = os.str();
  return rc1 == 0 && rc2 == 0 && same;
#endif
}

}  // namespace

int main() {
  using Fn = bool (*)(std::string&);
  const std::vector<std::pair<int, Fn>> criteria = {
      {1, &criterion1}, {2, &criterion2}, {3, &criterion3},
      {4, &criterion4}, {5, &criterion5}, {6, &criterion6},
      {7, &criterion7}, {8, &criterion8}, {9, &criterion9}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
