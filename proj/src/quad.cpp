#include "hardycheck/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hardycheck {

namespace {

// Gauss-Kronrod 7-15 nodes on [-1,1] (positive half) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
  bool infinite;
};

Panel gk15_full(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  bool inf_seen = false;
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  fv[7] = f(c);
  double resk = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double s = fv[j] + fv[14 - j];
    if (!std::isfinite(s)) { inf_seen = true; continue; }
    resk += kWk[j] * s;
  }
  if (!std::isfinite(fv[7])) inf_seen = true; else resk += kWk[7] * fv[7];
  // Gauss-7 nodes are the odd-index Kronrod nodes plus the center.
  double resg = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double s = fv[1 + 2 * j] + fv[13 - 2 * j];
    if (std::isfinite(s)) resg += kWg[j] * s;
  }
  if (std::isfinite(fv[7])) resg += kWg[3] * fv[7];
  const double value = resk * h;
  const double error = std::abs((resk - resg) * h);
  return Panel{value, error, inf_seen};
}

struct AdaptState {
  double err_total = 0.0;
  long panels = 0;
  bool depth_exhausted = false;
  bool infinite = false;
};

// Caps the total panel count per integrate() call; a rough integrand (e.g.
// one dominated by roundoff noise) then surfaces as QuadratureFailure with
// the partial estimate instead of subdividing for an unbounded time.
constexpr long kPanelBudget = 200000;

double adapt(const ScalarFn& f, double a, double b, double tol, int depth,
             AdaptState& st) {
  Panel p = gk15_full(f, a, b);
  ++st.panels;
  if (p.infinite) {
    st.infinite = true;
    return kInf;
  }
  // Roundoff floor: no point subdividing below machine resolution of the value.
  const double floor_tol = 1e-15 * std::abs(p.value);
  if (p.error <= std::max(tol, floor_tol) || depth <= 0 ||
      st.panels > kPanelBudget) {
    if (p.error > std::max(tol, floor_tol)) st.depth_exhausted = true;
    st.err_total += p.error;
    return p.value;
  }
  const double m = 0.5 * (a + b);
  const double left = adapt(f, a, m, 0.5 * tol, depth - 1, st);
  if (st.infinite) return kInf;
  const double right = adapt(f, m, b, 0.5 * tol, depth - 1, st);
  if (st.infinite) return kInf;
  return left + right;
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, const QuadConfig& cfg,
                 const std::vector<double>& splits) {
  if (!(a >= 0.0) || !(b >= a)) throw std::invalid_argument("integrate: bad range");
  if (b == a) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double s : splits)
    if (s > a && s < b && std::isfinite(s)) cuts.push_back(s);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each segment touching 0 or inf goes through t = e^s; interior finite
  // segments are integrated directly.
  struct Seg { double lo, hi; bool logged; };
  std::vector<Seg> segs;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double l = cuts[i], u = cuts[i + 1];
    if (l == 0.0 || u == kInf) {
      double sl = (l == 0.0) ? cfg.log_lo : std::log(l);
      double su = (u == kInf) ? cfg.log_hi : std::log(u);
      sl = std::max(sl, cfg.log_lo);
      su = std::min(su, cfg.log_hi);
      if (su > sl) segs.push_back({sl, su, true});
    } else {
      segs.push_back({l, u, false});
    }
  }
  if (segs.empty()) return 0.0;

  auto seg_fn = [&f](const Seg& s) -> ScalarFn {
    if (s.logged)
      return [&f](double t) { const double x = std::exp(t); return f(x) * x; };
    return f;
  };

  // Coarse pass fixes the absolute budget so adaptivity is scale-covariant.
  double scale = 0.0;
  for (const Seg& s : segs) {
    Panel p = gk15_full(seg_fn(s), s.lo, s.hi);
    if (!p.infinite) scale += std::abs(p.value);
  }
  const double tol0 =
      std::max(cfg.abs_tol, cfg.rel_tol * scale) / static_cast<double>(segs.size());

  AdaptState st;
  double total = 0.0;
  for (const Seg& s : segs) {
    total += adapt(seg_fn(s), s.lo, s.hi, tol0, cfg.max_depth, st);
    if (st.infinite) return kInf;
  }
  if (total > kOverflowGuard) return kInf;
  if (st.depth_exhausted &&
      st.err_total > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    throw QuadratureFailure("integrate: max_depth reached without convergence",
                            total, st.err_total);
  }
  return total;
}

namespace {

double eval_guarded(const ScalarFn& f, double x, bool& infinite) {
  const double v = f(x);
  if (std::isnan(v)) return -kInf;
  if (v > kOverflowGuard) { infinite = true; return kInf; }
  return v;
}

}  // namespace

double sup_on(const ScalarFn& f, double a, double b, const QuadConfig& cfg,
              const std::vector<double>& boundaries) {
  const double lo = std::max(a, std::exp(cfg.log_lo));
  const double hi = (b == kInf) ? std::exp(cfg.log_hi) : std::max(b * (1.0 - 1e-12), lo);
  if (!(hi > lo)) return f(lo);
  bool infinite = false;
  const double decades = std::log10(hi / lo);
  const int n1 = std::min(20000, std::max(16, static_cast<int>(64.0 * decades) + 1));
  std::vector<double> grid;
  grid.reserve(n1 + 8 + boundaries.size() * 3);
  const double lr = std::log(lo), step = (std::log(hi) - lr) / n1;
  for (int i = 0; i <= n1; ++i) grid.push_back(std::exp(lr + i * step));
  for (double bd : boundaries) {
    if (bd <= lo || bd >= hi) continue;
    grid.push_back(bd);
    grid.push_back(bd * (1.0 - 1e-9));
    grid.push_back(bd * (1.0 + 1e-9));
  }
  // One-sided limits at the open endpoints (e.g. a factor that jumps right
  // above lo) are approached only linearly by the refinement, so probe them.
  grid.push_back(lo * (1.0 + 1e-12));
  grid.push_back(lo * (1.0 + 1e-10));
  grid.push_back(hi * (1.0 - 1e-10));
  // exp(log(x)) round-trips can drift an ulp outside [lo,hi]; callers pass
  // functions whose domain starts exactly at lo, so clamp.
  for (double& g : grid) g = std::clamp(g, lo, hi);
  std::sort(grid.begin(), grid.end());

  double best = -kInf;
  std::vector<size_t> top;  // indices of the three best coarse cells
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    vals[i] = eval_guarded(f, grid[i], infinite);
    if (infinite) return kInf;
  }
  // Pick the three best distinct nodes for refinement.
  std::vector<size_t> idx(grid.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + std::min<size_t>(3, idx.size()),
                    idx.end(), [&](size_t x, size_t y) { return vals[x] > vals[y]; });
  best = vals[idx[0]];
  for (size_t t = 0; t < std::min<size_t>(3, idx.size()); ++t) {
    size_t i = idx[t];
    double l = (i == 0) ? grid[i] : grid[i - 1];
    double u = (i + 1 == grid.size()) ? grid[i] : grid[i + 1];
    // Three rounds of 256-point refinement: final density well beyond
    // 2048 nodes per decade.
    for (int round = 0; round < 3 && u > l; ++round) {
      const double ll = std::log(l), ss = (std::log(u) - ll) / 256.0;
      double bl = l, bv = -kInf;
      for (int j = 0; j <= 256; ++j) {
        const double x = std::clamp(std::exp(ll + j * ss), lo, hi);
        const double v = eval_guarded(f, x, infinite);
        if (infinite) return kInf;
        if (v > bv) { bv = v; bl = x; }
      }
      best = std::max(best, bv);
      const double w = std::exp(2.0 * ss);
      l = std::max(l, bl / w);
      u = std::min(u, bl * w);
    }
  }
  return guard_overflow(best);
}

namespace {

inline double mul0(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;  // the 0*inf = 0 convention
  return x * y;
}

}  // namespace

// Best-first branch and bound. Over [l,h] the product of a non-increasing A
// and a non-decreasing B is bounded by A(l)B(h), so the node with the largest
// such certificate is split until the certificate meets the best value found.
double sup_product(const ScalarFn& A, const ScalarFn& B, double lo, double hi,
                   double rel_tol, int max_depth) {
  if (!(hi >= lo)) throw std::invalid_argument("sup_product: bad range");
  const double alo = A(lo), ahi = A(hi), blo = B(lo), bhi = B(hi);
  // The product is declared infinite only where an actual evaluation is
  // infinite. An infinite certificate A(l)B(h) alone is inconclusive: it also
  // arises when an overflow-guarded B meets a decayed-but-nonzero A, and the
  // subdivision below then localizes the crossing and resolves it.
  double best = std::max(mul0(alo, blo), mul0(ahi, bhi));
  if (best == kInf) return kInf;

  struct Node {
    double lo, hi, alo, bhi, ub;
    bool operator<(const Node& o) const { return ub < o.ub; }
  };
  std::priority_queue<Node> queue;
  queue.push({lo, hi, alo, bhi, mul0(alo, bhi)});

  const int max_evals = 4000 * std::max(1, max_depth / 60);
  for (int evals = 0; !queue.empty() && evals < max_evals; ++evals) {
    const Node n = queue.top();
    queue.pop();
    if (n.ub <= best * (1.0 + rel_tol))
      break;  // certified: nothing on the queue can beat best by more than tol
    if (!(n.hi > n.lo * (1.0 + 1e-15)))
      continue;  // unresolvable sliver; let the remaining nodes finish
    // Geometric midpoint; with a zero left endpoint, drop twelve decades so
    // the search reaches any scale in a handful of levels.
    const double m = (n.lo > 0.0) ? std::sqrt(n.lo * n.hi) : n.hi * 1e-12;
    if (!(m > n.lo) || !(m < n.hi)) continue;
    const double am = A(m), bm = B(m);
    const double phim = mul0(am, bm);
    if (phim == kInf) return kInf;
    best = std::max(best, phim);
    const double ub_l = mul0(n.alo, bm), ub_r = mul0(am, n.bhi);
    if (ub_l > best * (1.0 + rel_tol)) queue.push({n.lo, m, n.alo, bm, ub_l});
    if (ub_r > best * (1.0 + rel_tol)) queue.push({m, n.hi, am, n.bhi, ub_r});
  }
  return guard_overflow(best);
}

double solve_monotone(const ScalarFn& F, double target, double lo, double hi,
                      double rel_tol, double abs_tol) {
  if (!(hi > lo)) throw BracketError("solve_monotone: empty bracket");
  double flo = F(lo) - target;
  double fhi = F(hi) - target;
  const double tol = std::max(abs_tol, rel_tol * std::abs(target));
  if (flo > tol || fhi < -tol)
    throw BracketError("solve_monotone: target not bracketed");
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;

  double x = lo, fx = flo;
  for (int iter = 0; iter < 400; ++iter) {
    // Secant step, safeguarded by bisection whenever it leaves the bracket
    // or stalls; alternating keeps the bracket shrinking geometrically.
    double cand;
    if (iter % 2 == 0 && fhi != flo) {
      cand = lo - flo * (hi - lo) / (fhi - flo);
      if (!std::isfinite(cand) || cand <= lo || cand >= hi) cand = 0.5 * (lo + hi);
    } else {
      cand = 0.5 * (lo + hi);
    }
    x = cand;
    fx = F(x) - target;
    if (std::abs(fx) <= tol) return x;
    if (fx < 0.0) { lo = x; flo = fx; } else { hi = x; fhi = fx; }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(lo), std::abs(hi)))
      return 0.5 * (lo + hi);
  }
  return x;
}

}  // namespace hardycheck
