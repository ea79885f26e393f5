#include "hardycheck/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

namespace hardycheck {

double Piece::eval(double t) const {
  return scale * std::pow(t, pow) * std::exp(-rate * t);
}

double piece_integral(const Piece& p, double lo_, double hi_, const QuadConfig& cfg) {
  if (!(lo_ < hi_)) return 0.0;
  const double c = p.scale, a = p.pow, b = p.rate;
  if (c == 0.0) return 0.0;
  if (lo_ == 0.0 && a <= -1.0) return kInf;
  if (b == 0.0) {
    if (hi_ == kInf) {
      if (a >= -1.0) return kInf;
      return -c * std::pow(lo_, a + 1.0) / (a + 1.0);
    }
    if (a == -1.0) return c * std::log(hi_ / lo_);
    const double lop = (lo_ == 0.0) ? 0.0 : std::pow(lo_, a + 1.0);
    return guard_overflow(c * (std::pow(hi_, a + 1.0) - lop) / (a + 1.0));
  }
  if (b > 0.0) {
    if (a > -1.0) {
      const double s = a + 1.0;
      const double factor = c * boost::math::tgamma(s) / std::pow(b, s);
      // Far in the tail gamma_p saturates at 1 and the difference of two
      // values near 1 loses all precision, so switch to the upper function.
      if (lo_ > 0.0 && boost::math::gamma_p(s, b * lo_) > 0.5) {
        const double qlo = boost::math::gamma_q(s, b * lo_);
        const double qhi = (hi_ == kInf) ? 0.0 : boost::math::gamma_q(s, b * hi_);
        return guard_overflow(factor * (qlo - qhi));
      }
      const double plo = (lo_ == 0.0) ? 0.0 : boost::math::gamma_p(s, b * lo_);
      const double phi = (hi_ == kInf) ? 1.0 : boost::math::gamma_p(s, b * hi_);
      return guard_overflow(factor * (phi - plo));
    }
    // a <= -1 with lo_ > 0: no incomplete-gamma form, integrate numerically.
    return integrate([&p](double t) { return p.eval(t); }, lo_, hi_, cfg);
  }
  // b < 0: growing exponential (arises from sigma_p transforms only).
  if (hi_ == kInf) return kInf;
  if (p.eval(hi_) > kOverflowGuard) return kInf;
  if (a == 0.0) {
    const double beta = -b;
    return guard_overflow(c * (std::exp(beta * hi_) - std::exp(beta * lo_)) / beta);
  }
  return guard_overflow(
      integrate([&p](double t) { return p.eval(t); }, lo_, hi_, cfg));
}

double piece_integral_log(const Piece& p, double lo_, double hi_,
                          const QuadConfig& cfg) {
  if (!(lo_ < hi_)) return -kInf;
  const double c = p.scale, a = p.pow, b = p.rate;
  if (c == 0.0) return -kInf;
  if (lo_ == 0.0 && a <= -1.0) return kInf;
  if (b < 0.0 && hi_ != kInf) {
    // Growing exponential: factor out the magnitude at the right endpoint so
    // the remaining integral stays within double range.
    const double beta = -b;
    if (a == 0.0)
      return std::log(c / beta) + beta * hi_ +
             std::log1p(-std::exp(-beta * (hi_ - lo_)));
    const double lead = beta * hi_ + a * std::log(hi_);
    auto g = [&](double t) {
      return c * std::pow(t / hi_, a) * std::exp(beta * (t - hi_));
    };
    const double base = integrate(g, lo_, hi_, cfg);
    if (base == kInf) return kInf;
    return base <= 0.0 ? -kInf : lead + std::log(base);
  }
  const double v = piece_integral(p, lo_, hi_, cfg);
  if (v == kInf) return kInf;
  return v <= 0.0 ? -kInf : std::log(v);
}

namespace {

std::string canonical_text(const std::vector<Piece>& pieces) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (pieces.size() == 1) {
    const Piece& p = pieces.front();
    if (p.rate == 0.0 && p.pow == 0.0) return "const:" + num(p.scale);
    if (p.rate == 0.0 && p.scale == 1.0) return "pow:" + num(p.pow);
    return "exp:" + num(p.scale) + "," + num(p.pow) + "," + num(p.rate);
  }
  std::string out = "pieces:[";
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += ",";
    out += "(" + (pieces[i].hi == kInf ? std::string("inf") : num(pieces[i].hi)) +
           "," + num(pieces[i].pow) + "," + num(pieces[i].scale) + ")";
  }
  return out + "]";
}

}  // namespace

WeightSpec::WeightSpec(std::vector<Piece> pieces, std::string text)
    : pieces_(std::move(pieces)), text_(std::move(text)) {
  if (pieces_.empty()) throw WeightClassError("weight: no pieces");
  for (const Piece& p : pieces_) {
    if (!(p.scale > 0.0) || !std::isfinite(p.scale))
      throw WeightClassError("weight: nonpositive scale");
    if (!(p.rate >= 0.0)) throw WeightClassError("weight: negative decay rate");
  }
  continuous_ = true;
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double x = pieces_[i].hi;
    const double l = pieces_[i].eval(x), r = pieces_[i + 1].eval(x);
    if (std::abs(l - r) > 1e-12 * std::max(l, r)) continuous_ = false;
  }
  validate_weight_class();
  cum_.assign(pieces_.size(), 0.0);
  tail_.assign(pieces_.size(), 0.0);
  for (size_t i = 1; i < pieces_.size(); ++i)
    cum_[i] = cum_[i - 1] + piece_integral(pieces_[i - 1], pieces_[i - 1].lo,
                                           pieces_[i - 1].hi);
  for (size_t i = pieces_.size(); i-- > 0;) {
    const double rest = (i + 1 < pieces_.size()) ? tail_[i + 1] : 0.0;
    tail_[i] = rest + piece_integral(pieces_[i], pieces_[i].lo, pieces_[i].hi);
  }
}

void WeightSpec::validate_weight_class() const {
  if (pieces_.front().pow <= -1.0)
    throw WeightClassError("weight: \\int_0^x diverges (first exponent <= -1)");
  // Probe over >= 6 decades; with closed forms this is a sanity net for the
  // symbolic logic above, not a substitute for it.
  for (double x : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
    size_t i = 0;
    double acc = 0.0;
    for (; i < pieces_.size() && pieces_[i].lo < x; ++i)
      acc += piece_integral(pieces_[i], pieces_[i].lo, std::min(pieces_[i].hi, x));
    if (!(acc > 0.0) || !std::isfinite(acc))
      throw WeightClassError("weight: lower integral not in (0,inf) at probe");
  }
}

WeightSpec WeightSpec::constant(double c) {
  return WeightSpec({{0.0, kInf, c, 0.0, 0.0}}, canonical_text({{0.0, kInf, c, 0.0, 0.0}}));
}

WeightSpec WeightSpec::power(double a) {
  return WeightSpec({{0.0, kInf, 1.0, a, 0.0}}, canonical_text({{0.0, kInf, 1.0, a, 0.0}}));
}

WeightSpec WeightSpec::exp_power(double c, double a, double b) {
  return WeightSpec({{0.0, kInf, c, a, b}}, canonical_text({{0.0, kInf, c, a, b}}));
}

WeightSpec WeightSpec::piecewise(const std::vector<std::array<double, 3>>& triples) {
  if (triples.empty()) throw WeightClassError("piecewise: empty");
  std::vector<Piece> pieces;
  double prev = 0.0;
  for (const auto& t : triples) {
    if (!(t[0] > prev)) throw WeightClassError("piecewise: breakpoints not ascending");
    pieces.push_back({prev, t[0], t[2], t[1], 0.0});
    prev = t[0];
  }
  if (pieces.back().hi != kInf)
    throw WeightClassError("piecewise: last breakpoint must be inf");
  std::string text = canonical_text(pieces);
  return WeightSpec(std::move(pieces), std::move(text));
}

WeightSpec WeightSpec::tabulated(const std::vector<std::pair<double, double>>& table) {
  if (table.size() < 2) throw WeightClassError("tabulated: need >= 2 points");
  std::vector<Piece> pieces;
  const size_t m = table.size();
  for (size_t i = 0; i + 1 < m; ++i) {
    const auto [t0, v0] = table[i];
    const auto [t1, v1] = table[i + 1];
    if (!(t0 > 0.0) || !(t1 > t0) || !(v0 > 0.0) || !(v1 > 0.0))
      throw WeightClassError("tabulated: abscissae/values must be positive ascending");
    const double slope = std::log(v1 / v0) / std::log(t1 / t0);
    const double scale = v0 / std::pow(t0, slope);
    const double lo = (i == 0) ? 0.0 : t0;                 // extrapolate first law to 0
    const double hi = (i + 2 == m) ? kInf : t1;            // and last law to inf
    pieces.push_back({lo, hi, scale, slope, 0.0});
  }
  std::string text = canonical_text(pieces);
  return WeightSpec(std::move(pieces), std::move(text));
}

namespace {

double parse_num(std::string_view s) {
  if (s == "inf") return kInf;
  try {
    size_t pos = 0;
    double v = std::stod(std::string(s), &pos);
    if (pos != s.size()) throw ParseError("trailing characters in number");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number: '" + std::string(s) + "'");
  }
}

std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

WeightSpec WeightSpec::parse(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("weight spec needs '<kind>:<args>': '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "const") return constant(parse_num(rest));
  if (kind == "pow") return power(parse_num(rest));
  if (kind == "exp") {
    auto parts = split_csv(rest);
    if (parts.size() != 3) throw ParseError("exp:<c>,<a>,<b> takes three numbers");
    return exp_power(parse_num(parts[0]), parse_num(parts[1]), parse_num(parts[2]));
  }
  if (kind == "pieces") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw ParseError("pieces:[(x,a,c),...] expected");
    std::vector<std::array<double, 3>> triples;
    std::string_view body = rest.substr(1, rest.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      if (body[pos] == ',') { ++pos; continue; }
      if (body[pos] != '(') throw ParseError("pieces: expected '('");
      const size_t close = body.find(')', pos);
      if (close == std::string_view::npos) throw ParseError("pieces: missing ')'");
      auto parts = split_csv(body.substr(pos + 1, close - pos - 1));
      if (parts.size() != 3) throw ParseError("pieces: each triple is (x,a,c)");
      triples.push_back({parse_num(parts[0]), parse_num(parts[1]), parse_num(parts[2])});
      pos = close + 1;
    }
    return piecewise(triples);
  }
  if (kind == "table") {
    std::ifstream in{std::string(rest)};
    if (!in) throw ParseError("table: cannot open '" + std::string(rest) + "'");
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double t, v;
      if (ls >> t >> v) table.emplace_back(t, v);
    }
    return tabulated(table);
  }
  throw ParseError("unknown weight kind '" + std::string(kind) + "'");
}

double WeightSpec::eval(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("weight eval: t must be positive");
  size_t i = 0;
  while (i + 1 < pieces_.size() && t > pieces_[i].hi) ++i;
  return pieces_[i].eval(t);
}

double WeightSpec::lower_integral(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("lower_integral: x must be >= 0");
  if (x == 0.0) return 0.0;
  size_t i = 0;
  while (i + 1 < pieces_.size() && x > pieces_[i].hi) ++i;
  return cum_[i] + piece_integral(pieces_[i], pieces_[i].lo, std::min(x, pieces_[i].hi));
}

double WeightSpec::upper_integral(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("upper_integral: x must be >= 0");
  if (x == 0.0) return tail_[0];
  size_t i = 0;
  while (i + 1 < pieces_.size() && x > pieces_[i].hi) ++i;
  const double rest = (i + 1 < pieces_.size()) ? tail_[i + 1] : 0.0;
  if (rest == kInf) return kInf;
  if (x >= pieces_[i].hi) return rest;
  return rest + piece_integral(pieces_[i], x, pieces_[i].hi);
}

bool WeightSpec::tail_finite() const {
  const Piece& last = pieces_.back();
  return last.rate > 0.0 || last.pow < -1.0;
}

std::vector<double> WeightSpec::interior_breakpoints() const {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
  return out;
}

WeightSpec WeightSpec::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaled: lambda must be positive");
  std::vector<Piece> pieces = pieces_;
  for (Piece& p : pieces) p.scale *= lambda;
  std::string text = canonical_text(pieces);
  return WeightSpec(std::move(pieces), std::move(text));
}

namespace {

// Supremum of C t^A e^{-B t} over the clipped interval [l,u] (limits at the
// open ends); the only interior critical point is t = A/B.
double piece_sup(const Piece& g, double l, double u) {
  double best = 0.0;
  auto consider = [&](double v) { best = std::max(best, v); };
  if (l == 0.0) {
    if (g.pow < 0.0) return kInf;
    consider(g.pow > 0.0 ? 0.0 : g.scale);
  } else {
    consider(g.eval(l));
  }
  if (u == kInf) {
    if (g.rate < 0.0) return kInf;
    if (g.rate == 0.0) {
      if (g.pow > 0.0) return kInf;
      consider(g.pow < 0.0 ? 0.0 : g.scale);
    } else {
      consider(0.0);
    }
  } else {
    consider(g.eval(u));
  }
  if (g.rate != 0.0) {
    const double crit = g.pow / g.rate;
    if (crit > l && crit < u && crit > 0.0) consider(g.eval(crit));
  }
  return best;
}

}  // namespace

double sigma_p(const WeightSpec& v, double p, double x, double y, const QuadConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("sigma_p: p must be >= 1");
  if (!(x >= 0.0) || !(x <= y)) throw std::invalid_argument("sigma_p: need 0 <= x <= y");
  if (y == x) return 0.0;
  if (p == 1.0) {
    double best = 0.0;
    for (const Piece& pc : v.pieces()) {
      const double l = std::max(pc.lo, x);
      const double u = std::min(pc.hi, y);
      if (!(l < u)) continue;
      Piece inv{pc.lo, pc.hi, 1.0 / pc.scale, -pc.pow, -pc.rate};
      best = std::max(best, piece_sup(inv, l, u));
      if (best == kInf) return kInf;
    }
    return guard_overflow(best);
  }
  const double pd = p / (p - 1.0);
  const double s = 1.0 - pd;  // negative
  double acc = 0.0;
  for (const Piece& pc : v.pieces()) {
    const double l = std::max(pc.lo, x);
    const double u = std::min(pc.hi, y);
    if (!(l < u)) continue;
    Piece tp{pc.lo, pc.hi, std::pow(pc.scale, s), pc.pow * s, pc.rate * s};
    acc += piece_integral(tp, l, u, cfg);
    if (acc == kInf) return kInf;
  }
  return guard_overflow(std::pow(acc, 1.0 / pd));
}

std::pair<double, double> dual_and_rho(double p, double r) {
  if (!(p >= 1.0) || !(r > 0.0)) throw std::invalid_argument("dual_and_rho: bad (p,r)");
  const double pd = (p == 1.0) ? kInf : p / (p - 1.0);
  const double rho = (r < p) ? 1.0 / (1.0 / r - 1.0 / p) : kInf;
  return {pd, rho};
}

Exponents::Exponents(double p_, double q_, double r_) : p(p_), q(q_), r(r_) {
  if (!(p >= 1.0) || !(q > 0.0) || !(r > 0.0))
    throw std::invalid_argument("Exponents: need p >= 1, q > 0, r > 0");
}

double Exponents::p_dual() const { return dual_and_rho(p, r).first; }
double Exponents::rho() const { return dual_and_rho(p, r).second; }

char Exponents::regime() const {
  if (p <= q) return (p <= r) ? 'a' : 'b';
  return (p <= r) ? 'c' : 'd';
}

}  // namespace hardycheck
