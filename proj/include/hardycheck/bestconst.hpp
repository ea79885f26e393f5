#pragma once

#include <string>
#include <vector>

#include "hardycheck/conditions.hpp"
#include "hardycheck/functionals.hpp"

namespace hardycheck {

enum class Target { main, sup, discrete };

std::string target_name(Target t);
Target parse_target(const std::string& s);

struct OptimizerConfig {
  int grid_cells = 24;     // >= 8
  double t_min = 1e-3;     // > 0
  double t_max = 50.0;
  int restarts = 3;        // >= 1
  int max_iters = 40;      // full coordinate sweeps per restart
  unsigned seed = 12345;
  // Multiplicative coordinate steps; each is tried together with its inverse.
  std::vector<double> step_schedule = {2.0, 1.1, 1.01};

  void validate() const;
};

/// The best ratio lhs(h)/rhs(h) found by direct search: a certified lower
/// bound on the true constant. `truncated_domain` is set when the w-tail
/// diverges and every functional was evaluated on (0, t_max] instead of
/// (0, inf) — the honest value is then +inf and grows without bound in t_max.
struct BestConstantEstimate {
  double value = 0.0;
  TestFunction argmax_h{{0.0, 1.0}, {0.0}};
  std::vector<double> trace;  // best ratio per restart, in restart order
  Target target = Target::main;
  bool truncated_domain = false;
};

/// (sum s_k^rho)^{1/rho}, max for rho = inf, 0 for an empty sequence.
double lrho_norm(const std::vector<double>& seq, double rho);

/// norm of the embedding l^p(v) -> l^r(w) on a finite index set:
/// ||{w_k/v_k}||_{l^rho} with rho from dual_and_rho(p, r).
double discrete_embedding_constant(const std::vector<double>& v_seq,
                                   const std::vector<double>& w_seq, double p,
                                   double r);

/// Brute-force companion: maximize ||{a_k w_k}||_{l^r} / ||{a_k v_k}||_{l^p}
/// over a >= 0 by seeded random starts plus multiplicative coordinate ascent.
double discrete_embedding_bruteforce(const std::vector<double>& v_seq,
                                     const std::vector<double>& w_seq, double p,
                                     double r, unsigned seed = 1);

/// Step function supported in (a,b), normalized to rhs_norm = 1, whose
/// single-block ratio approaches hardy_block_constant from below
/// (the ascent must reach at least half of it).
TestFunction block_extremizer(const WeightSpec& v, const WeightSpec& w, double p,
                              double q, double a, double b, int cells = 16,
                              const QuadConfig& cfg = {});

BestConstantEstimate estimate_best_constant(const WeightSpec& u,
                                            const WeightSpec& v,
                                            const WeightSpec& w, double p,
                                            double q, double r, Target target,
                                            const OptimizerConfig& opt = {},
                                            const QuadConfig& cfg = {});

}  // namespace hardycheck
