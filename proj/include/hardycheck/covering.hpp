#pragma once

#include <vector>

#include "hardycheck/weights.hpp"

namespace hardycheck {

/// Points x_k with \int_0^{x_k} u = 2^k. The index set is truncated below at
/// k_min; when the total u-mass is finite it ends at M with x_{M+1} = inf.
struct CoveringSequence {
  int k_min = 0;
  int k_max = 0;  // last stored index
  bool finite_mass = false;
  double total_mass = kInf;
  int M = 0;                       // meaningful when finite_mass
  bool degenerate_dropped = false; // total == 2^M exactly, index M removed
  std::vector<double> points;      // x_{k_min} .. x_{k_max}

  double x(int k) const { return points.at(static_cast<size_t>(k - k_min)); }
  /// Right edge of block k: x_{k+1}, or +inf for the terminal block.
  double block_end(int k) const {
    return (k < k_max) ? x(k + 1) : (finite_mass ? kInf : x(k_max));
  }
  /// Indices k whose block [x_k, x_{k+1}) is stored. For infinite mass the
  /// last stored point only bounds the previous block, so it is excluded;
  /// for finite mass the terminal block [x_{k_max}, inf) is included.
  int last_block_index() const { return finite_mass ? k_max : k_max - 1; }
};

CoveringSequence build_covering(const WeightSpec& u, int k_min, int k_max_hint,
                                const QuadConfig& cfg = {},
                                bool allow_degenerate = false);

struct BlockCheck {
  int k;
  double integral;       // \int_{x_{k-1}}^{x_k} u
  double ratio;          // integral / 2^{k-1}
  double remark_value;   // \int_{x_{k-1}}^{x_k} (\int_0^t u)^{r/(p-r)} u(t) dt
  double remark_lo;      // two-sided window for remark_value (only if r < p)
  double remark_hi;
  bool pass;
};

/// Telescoping check per block, plus the second dyadic equivalence when
/// 0 < r < p is supplied (pass p = 0 to skip it).
std::vector<BlockCheck> validate_covering(const CoveringSequence& cs,
                                          const WeightSpec& u, double p = 0.0,
                                          double r = 0.0,
                                          const QuadConfig& cfg = {},
                                          double rel_tol = 1e-8);

}  // namespace hardycheck
