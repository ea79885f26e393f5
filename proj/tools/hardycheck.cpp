// Command-line front end: parse weight specs and exponents, run one of the
// report subcommands, and emit JSON/CSV/table output with stable formatting.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardycheck/bestconst.hpp"
#include "hardycheck/conditions.hpp"
#include "hardycheck/covering.hpp"
#include "hardycheck/errors.hpp"
#include "hardycheck/functionals.hpp"
#include "hardycheck/weights.hpp"

namespace {

using namespace hardycheck;

// ---------------------------------------------------------------------------
// Deterministic JSON rendering: 17 significant digits, inf/-inf as strings,
// NaN as null, keys emitted in fixed order.

std::string jnum(double v) {
  if (std::isnan(v)) return "null";
  if (v == kInf) return "\"inf\"";
  if (v == -kInf) return "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string jbool(bool b) { return b ? "true" : "false"; }

using KV = std::vector<std::pair<std::string, std::string>>;

std::string jobj(const KV& kv) {
  std::string out = "{";
  for (size_t i = 0; i < kv.size(); ++i) {
    if (i) out += ",";
    out += jstr(kv[i].first) + ":" + kv[i].second;
  }
  return out + "}";
}

std::string jarr(const std::vector<std::string>& items) {
  std::string out = "[";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "]";
}

std::string jnums(const std::vector<double>& xs) {
  std::vector<std::string> items;
  items.reserve(xs.size());
  for (double x : xs) items.push_back(jnum(x));
  return jarr(items);
}

std::string entry_json(const ConditionEntry& e) {
  return jobj({{"value", jnum(e.value)},
               {"finite", jbool(e.finite)},
               {"defined", jbool(e.defined)}});
}

std::string map_json(const ConditionMap& m) {
  KV kv;
  for (const auto& [name, e] : m) kv.emplace_back(name, entry_json(e));
  return jobj(kv);
}

std::string h_json(const TestFunction& h) {
  return jobj({{"breakpoints", jnums(h.breakpoints)},
               {"values", jnums(h.values)}});
}

// ---------------------------------------------------------------------------

struct ProblemConfig {
  std::string u = "exp:1,0,1";
  std::string v = "const:1";
  std::string w = "exp:1,0,1";
  double p = 2, q = 2, r = 2;
  std::string target = "main";
  std::string grid;  // "N,tmin,tmax"
  int restarts = 3;
  int max_iters = 40;
  unsigned seed = 12345;
  int kmin = -8, kmax = 8;
  bool with_covering = false;
  bool allow_degenerate = false;
  std::string h;  // "b0,b1,...,bn;v1,...,vn"
  double rel_tol = 1e-9;
  std::string format = "json";
  std::string out;
  std::string sweep;  // "var=lo:hi:step"
  double window_lo = 0.02, window_hi = 50.0;
  double equiv_k = 16.0;

  QuadConfig quad() const {
    QuadConfig cfg;
    cfg.rel_tol = rel_tol;
    return cfg;
  }
  OptimizerConfig optimizer() const {
    OptimizerConfig o;
    if (!grid.empty()) {
      int n = 0;
      double lo = 0, hi = 0;
      if (std::sscanf(grid.c_str(), "%d,%lf,%lf", &n, &lo, &hi) != 3)
        throw ParseError("bad --grid, expected N,tmin,tmax: " + grid);
      o.grid_cells = n;
      o.t_min = lo;
      o.t_max = hi;
    }
    o.restarts = restarts;
    o.max_iters = max_iters;
    o.seed = seed;
    return o;
  }
};

std::vector<double> parse_num_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    out.push_back(std::stod(tok, &pos));
  }
  return out;
}

TestFunction parse_h(const std::string& s) {
  const size_t semi = s.find(';');
  if (semi == std::string::npos)
    throw ParseError("bad --h, expected breakpoints;values: " + s);
  try {
    return TestFunction(parse_num_list(s.substr(0, semi)),
                        parse_num_list(s.substr(semi + 1)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad --h: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Subcommand report builders. Each returns the JSON body; CSV/table renderings
// are derived from the same data where they make sense.

std::string report_conditions(const ProblemConfig& pc) {
  const WeightSpec u = WeightSpec::parse(pc.u);
  const WeightSpec v = WeightSpec::parse(pc.v);
  const WeightSpec w = WeightSpec::parse(pc.w);
  const QuadConfig cfg = pc.quad();
  CoveringSequence cs;
  const CoveringSequence* csp = nullptr;
  if (pc.with_covering) {
    cs = build_covering(u, pc.kmin, pc.kmax, cfg, pc.allow_degenerate);
    csp = &cs;
  }
  const ConditionReport rep = condition_report(u, v, w, pc.p, pc.q, pc.r, csp, cfg);
  KV kv = {{"schema", "1"},
           {"u", jstr(u.text())},
           {"v", jstr(v.text())},
           {"w", jstr(w.text())},
           {"p", jnum(pc.p)},
           {"q", jnum(pc.q)},
           {"r", jnum(pc.r)},
           {"regime", jstr(std::string(1, rep.regime))},
           {"F", map_json(rep.F)},
           {"D", map_json(rep.D)},
           {"B", map_json(rep.B)},
           {"C_sup", map_json(rep.C_sup)},
           {"combined", jnum(rep.combined)}};
  if (csp) {
    kv.emplace_back("A", map_json(rep.A));
    kv.emplace_back("A_truncation_warning", jbool(rep.a_truncation_warning));
  }
  return jobj(kv);
}

std::string report_estimate(const ProblemConfig& pc) {
  const WeightSpec u = WeightSpec::parse(pc.u);
  const WeightSpec v = WeightSpec::parse(pc.v);
  const WeightSpec w = WeightSpec::parse(pc.w);
  const BestConstantEstimate est =
      estimate_best_constant(u, v, w, pc.p, pc.q, pc.r, parse_target(pc.target),
                             pc.optimizer(), pc.quad());
  return jobj({{"schema", "1"},
               {"target", jstr(target_name(est.target))},
               {"value", jnum(est.value)},
               {"truncated_domain", jbool(est.truncated_domain)},
               {"trace", jnums(est.trace)},
               {"argmax_h", h_json(est.argmax_h)}});
}

std::string report_evaluate(const ProblemConfig& pc) {
  if (pc.h.empty()) throw ParseError("evaluate requires --h");
  const WeightSpec u = WeightSpec::parse(pc.u);
  const WeightSpec v = WeightSpec::parse(pc.v);
  const WeightSpec w = WeightSpec::parse(pc.w);
  const TestFunction h = parse_h(pc.h);
  const QuadConfig cfg = pc.quad();
  const CoveringSequence cs =
      build_covering(u, pc.kmin, pc.kmax, cfg, pc.allow_degenerate);
  const EquivalenceBreakdown eb =
      equivalence_decomposition(h, u, w, pc.q, pc.r, cs, cfg);
  return jobj({{"schema", "1"},
               {"h", h_json(h)},
               {"rhs_norm", jnum(rhs_norm(h, v, pc.p))},
               {"lhs_main", jnum(eb.lhs_full)},
               {"lhs_sup", jnum(eb.term_sup)},
               {"lhs_discrete", jnum(eb.term_discrete)},
               {"ratio_lower", jnum(eb.ratio_lower)},
               {"ratio_upper", jnum(eb.ratio_upper)}});
}

std::string report_covering(const ProblemConfig& pc) {
  const WeightSpec u = WeightSpec::parse(pc.u);
  const QuadConfig cfg = pc.quad();
  const CoveringSequence cs =
      build_covering(u, pc.kmin, pc.kmax, cfg, pc.allow_degenerate);
  const std::vector<BlockCheck> checks =
      validate_covering(cs, u, pc.r < pc.p ? pc.p : 0.0, pc.r, cfg);
  std::vector<std::string> rows;
  for (const BlockCheck& bc : checks) {
    rows.push_back(jobj({{"k", std::to_string(bc.k)},
                         {"x_k", jnum(cs.x(bc.k))},
                         {"block_integral", jnum(bc.integral)},
                         {"ratio", jnum(bc.ratio)},
                         {"pass", jbool(bc.pass)}}));
  }
  KV kv = {{"schema", "1"},
           {"u", jstr(u.text())},
           {"k_min", std::to_string(cs.k_min)},
           {"k_max", std::to_string(cs.k_max)},
           {"finite_mass", jbool(cs.finite_mass)},
           {"total_mass", jnum(cs.total_mass)},
           {"degenerate_dropped", jbool(cs.degenerate_dropped)},
           {"points", jnums(cs.points)},
           {"blocks", jarr(rows)}};
  return jobj(kv);
}

std::string report_verify(const ProblemConfig& pc) {
  const WeightSpec u = WeightSpec::parse(pc.u);
  const WeightSpec v = WeightSpec::parse(pc.v);
  const WeightSpec w = WeightSpec::parse(pc.w);
  const QuadConfig cfg = pc.quad();
  const ConditionReport rep =
      condition_report(u, v, w, pc.p, pc.q, pc.r, nullptr, cfg);
  const BestConstantEstimate est = estimate_best_constant(
      u, v, w, pc.p, pc.q, pc.r, Target::main, pc.optimizer(), pc.quad());
  const double ratio =
      (rep.combined == kInf) ? 0.0 : est.value / rep.combined;
  const bool ratio_pass = (rep.combined == kInf) ||
                          (ratio >= pc.window_lo && ratio <= pc.window_hi);

  const CoveringSequence cs =
      build_covering(u, pc.kmin, pc.kmax, cfg, pc.allow_degenerate);
  const EquivalenceBreakdown eb =
      equivalence_decomposition(est.argmax_h, u, w, pc.q, pc.r, cs, cfg);
  const bool equiv_pass =
      eb.ratio_lower <= pc.equiv_k && eb.ratio_upper <= pc.equiv_k;

  return jobj({{"schema", "1"},
               {"regime", jstr(std::string(1, rep.regime))},
               {"combined", jnum(rep.combined)},
               {"estimate", jnum(est.value)},
               {"estimate_truncated", jbool(est.truncated_domain)},
               {"ratio", jnum(ratio)},
               {"ratio_window", jnums({pc.window_lo, pc.window_hi})},
               {"ratio_pass", jbool(ratio_pass)},
               {"decomposition",
                jobj({{"lhs_main", jnum(eb.lhs_full)},
                      {"term_discrete", jnum(eb.term_discrete)},
                      {"term_sup", jnum(eb.term_sup)},
                      {"ratio_lower", jnum(eb.ratio_lower)},
                      {"ratio_upper", jnum(eb.ratio_upper)}})},
               {"equiv_k", jnum(pc.equiv_k)},
               {"equiv_pass", jbool(equiv_pass)},
               {"pass", jbool(ratio_pass && equiv_pass)}});
}

// ---------------------------------------------------------------------------
// Non-JSON renderings: flatten one level of the JSON report into key,value
// rows. Nested objects are kept as JSON text in the value column.

std::vector<std::pair<std::string, std::string>> flatten(const std::string& json);

std::string render_csv(const std::string& json) {
  std::string out = "key,value\n";
  for (const auto& [k, val] : flatten(json)) {
    std::string esc = val;
    for (auto& c : esc)
      if (c == ',') c = ';';
    out += k + "," + esc + "\n";
  }
  return out;
}

std::string render_table(const std::string& json) {
  std::string out;
  for (const auto& [k, val] : flatten(json)) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%-24s %s\n", k.c_str(), val.c_str());
    out += buf;
  }
  return out;
}

// Minimal splitter for the objects produced above: top-level keys and their
// raw value text.
std::vector<std::pair<std::string, std::string>> flatten(const std::string& json) {
  std::vector<std::pair<std::string, std::string>> rows;
  if (json.empty() || json.front() != '{') return rows;
  size_t i = 1;
  while (i < json.size() && json[i] != '}') {
    if (json[i] != '"') break;
    const size_t kend = json.find('"', i + 1);
    if (kend == std::string::npos) break;
    const std::string key = json.substr(i + 1, kend - i - 1);
    i = kend + 2;  // past closing quote and ':'
    int depth = 0;
    bool in_str = false;
    const size_t start = i;
    while (i < json.size()) {
      const char c = json[i];
      if (in_str) {
        if (c == '\\') ++i;
        else if (c == '"') in_str = false;
      } else if (c == '"') {
        in_str = true;
      } else if (c == '{' || c == '[') {
        ++depth;
      } else if (c == '}' || c == ']') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) {
        break;
      }
      ++i;
    }
    rows.emplace_back(key, json.substr(start, i - start));
    if (i < json.size() && json[i] == ',') ++i;
  }
  return rows;
}

// ---------------------------------------------------------------------------

using Builder = std::string (*)(const ProblemConfig&);

struct SweepSpec {
  std::string var;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& s) {
  SweepSpec sw;
  const size_t eq = s.find('=');
  double lo = 0, hi = 0, step = 0;
  if (eq == std::string::npos ||
      std::sscanf(s.c_str() + eq + 1, "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      !(step > 0.0))
    throw ParseError("bad --sweep, expected var=lo:hi:step: " + s);
  sw.var = s.substr(0, eq);
  if (sw.var != "p" && sw.var != "q" && sw.var != "r")
    throw ParseError("--sweep variable must be p, q or r");
  for (double x = lo; x <= hi + 1e-12 * std::max(1.0, std::abs(hi)); x += step)
    sw.values.push_back(x);
  return sw;
}

std::string run_builder(Builder fn, const ProblemConfig& pc) {
  if (pc.sweep.empty()) return fn(pc);
  const SweepSpec sw = parse_sweep(pc.sweep);
  std::vector<std::future<std::string>> futs;
  for (double x : sw.values) {
    ProblemConfig point = pc;
    if (sw.var == "p") point.p = x;
    else if (sw.var == "q") point.q = x;
    else point.r = x;
    point.sweep.clear();
    futs.push_back(std::async(std::launch::async,
                              [fn, point]() { return fn(point); }));
  }
  std::vector<std::string> reports;
  reports.reserve(futs.size());
  for (auto& f : futs) reports.push_back(f.get());
  return jarr(reports);
}

void emit(const ProblemConfig& pc, const std::string& json) {
  std::string body;
  if (pc.format == "json") body = json + "\n";
  else if (pc.format == "csv") body = render_csv(json);
  else body = render_table(json);
  if (pc.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(pc.out, std::ios::binary);
    f << body;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification toolkit for weighted iterated "
               "weighted iterated Hardy-type inequalities"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");  // frees -h for --h

  ProblemConfig pc;
  app.add_option("--u", pc.u, "outer weight spec");
  app.add_option("--v", pc.v, "right-hand-side weight spec");
  app.add_option("--w", pc.w, "inner weight spec");
  app.add_option("--p", pc.p, "exponent p >= 1");
  app.add_option("--q", pc.q, "exponent q > 0");
  app.add_option("--r", pc.r, "exponent r > 0");
  app.add_option("--target", pc.target, "estimate target: main|sup|discrete");
  app.add_option("--grid", pc.grid, "optimizer grid: N,tmin,tmax");
  app.add_option("--restarts", pc.restarts, "optimizer restarts");
  app.add_option("--max-iters", pc.max_iters, "optimizer coordinate sweeps");
  app.add_option("--seed", pc.seed, "optimizer RNG seed");
  app.add_option("--kmin", pc.kmin, "covering: lowest dyadic index");
  app.add_option("--kmax", pc.kmax, "covering: highest dyadic index hint");
  app.add_flag("--with-covering", pc.with_covering,
               "conditions: include the discrete A-constants");
  app.add_flag("--allow-degenerate", pc.allow_degenerate,
               "drop the top covering index when the total mass is a power of 2");
  app.add_option("--h", pc.h, "step function: b0,...,bn;v1,...,vn");
  app.add_option("--rtol", pc.rel_tol, "quadrature relative tolerance");
  app.add_option("--format", pc.format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", pc.out, "write the report to a file instead of stdout");
  app.add_option("--sweep", pc.sweep, "sweep one exponent: var=lo:hi:step");
  app.add_option("--window-lo", pc.window_lo, "verify: lower ratio window");
  app.add_option("--window-hi", pc.window_hi, "verify: upper ratio window");
  app.add_option("--equiv-k", pc.equiv_k, "verify: decomposition constant bound");

  auto* sc_cond = app.add_subcommand("conditions", "characterization constants");
  auto* sc_est = app.add_subcommand("estimate", "best-constant lower bound");
  auto* sc_eval = app.add_subcommand("evaluate", "functionals for a given h");
  auto* sc_cov = app.add_subcommand("covering", "dyadic covering sequence");
  auto* sc_ver = app.add_subcommand("verify", "combined two-sided verdict");
  for (auto* sc : {sc_cond, sc_est, sc_eval, sc_cov, sc_ver}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  Builder fn = nullptr;
  if (sc_cond->parsed()) fn = &report_conditions;
  else if (sc_est->parsed()) fn = &report_estimate;
  else if (sc_eval->parsed()) fn = &report_evaluate;
  else if (sc_cov->parsed()) fn = &report_covering;
  else fn = &report_verify;

  try {
    emit(pc, run_builder(fn, pc));
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hardycheck::WeightClassError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Numerical failure: emit what we can as a partial report.
    emit(pc, jobj({{"schema", "1"}, {"error", jstr(e.what())}}));
    return 3;
  }
}
