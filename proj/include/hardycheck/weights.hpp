#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardycheck/quad.hpp"

namespace hardycheck {

/// One piece of a weight: value(t) = scale * t^pow * exp(-rate * t) on
/// (lo, hi]. Weights keep rate >= 0; power transforms (sigma_p) may produce
/// negative rates, handled by the same integration kernel.
struct Piece {
  double lo;
  double hi;  // +inf for the last piece
  double scale;
  double pow;
  double rate;

  double eval(double t) const;
};

/// Closed-form / quadrature integral of a single piece over [lo_, hi_].
/// Divergence (at 0 or at inf) is returned as +inf.
double piece_integral(const Piece& p, double lo_, double hi_, const QuadConfig& cfg = {});

/// log of the same integral, usable when the value itself overflows a double
/// (growing exponentials far out on the axis). Returns -inf for an empty or
/// zero integral and +inf for a divergent one.
double piece_integral_log(const Piece& p, double lo_, double hi_,
                          const QuadConfig& cfg = {});

/// Symbolic description of a weight on (0,inf): pointwise positive and with
/// 0 < \int_0^x < inf for every x. Tail convergence is decided exactly from
/// the last piece's exponents, never by quadrature.
class WeightSpec {
 public:
  static WeightSpec constant(double c);
  static WeightSpec power(double a);                              // t^a
  static WeightSpec exp_power(double c, double a, double b);      // c t^a e^{-bt}
  // Triples (x_i, a_i, c_i): piece i is c_i t^{a_i} on (x_{i-1}, x_i], x_0 = 0;
  // the last x_i must be +inf.
  static WeightSpec piecewise(const std::vector<std::array<double, 3>>& triples);
  // Sorted positive (t, value) pairs; log-linear interpolation, power-law
  // extrapolation beyond the table ends.
  static WeightSpec tabulated(const std::vector<std::pair<double, double>>& table);
  // Text grammar: const:<c> | pow:<a> | exp:<c>,<a>,<b> |
  // pieces:[(x1,a1,c1),...] | table:<path.csv>
  static WeightSpec parse(std::string_view text);

  double eval(double t) const;
  double lower_integral(double x) const;  // \int_0^x
  double upper_integral(double x) const;  // \int_x^inf, +inf if the tail diverges
  bool tail_finite() const;
  double total_mass() const { return upper_integral(0.0); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::vector<double> interior_breakpoints() const;
  bool continuous() const { return continuous_; }
  const std::string& text() const { return text_; }

  /// Pointwise scaling by lambda > 0.
  WeightSpec scaled(double lambda) const;

 private:
  WeightSpec(std::vector<Piece> pieces, std::string text);
  void validate_weight_class() const;

  std::vector<Piece> pieces_;
  std::string text_;
  bool continuous_ = true;
  std::vector<double> cum_;   // \int_0^{pieces_[i].lo}
  std::vector<double> tail_;  // \int_{pieces_[i].lo}^inf (may be +inf)
};

/// Dual-weight modulus sigma_p(x,y): (\int_x^y v^{1-p'})^{1/p'} for p > 1,
/// esssup of v^{-1} on (x,y) for p = 1. +inf on divergence.
double sigma_p(const WeightSpec& v, double p, double x, double y,
               const QuadConfig& cfg = {});

/// (p', rho) with p' = p/(p-1) (inf at p = 1) and 1/rho = (1/r - 1/p)_+.
std::pair<double, double> dual_and_rho(double p, double r);

/// (p, q, r) with the derived quantities and the exponent-regime tag.
struct Exponents {
  double p;
  double q;
  double r;

  Exponents(double p_, double q_, double r_);
  double p_dual() const;
  double rho() const;
  char regime() const;  // 'a': p<=min(q,r); 'b': r<p<=q; 'c': q<p<=r; 'd': max(q,r)<p
};

}  // namespace hardycheck
