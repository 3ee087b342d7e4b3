#include "m2vpi/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "m2vpi/certificate.hpp"
#include "m2vpi/counters.hpp"
#include "m2vpi/dapsp.hpp"
#include "m2vpi/generators.hpp"
#include "m2vpi/solver.hpp"
#include "m2vpi/tradeoff.hpp"

namespace m2vpi::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void take_counters(RunReport& r) {
  const WorkCounters& c = counters();
  r.edge_relaxations = c.edge_relaxations;
  r.locate_calls = c.locate_calls;
  r.kcycle_calls = c.kcycle_calls;
  r.peak_cells = c.peak_cells;
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

UniformInstance as_uniform(const Graph& g, const Rational& gamma) {
  std::vector<std::tuple<Vertex, Vertex, Rational>> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.emplace_back(e.u, e.v, e.c);
  return make_uniform(g.n(), es, gamma);
}

// Matrix rows plus the optional oracle diff; returns the mismatch count.
template <class T>
std::size_t write_matrix(std::ostream& os, const DiscountedDistances<T>& d, const DiscountedDistances<T>* want) {
  std::size_t bad = 0;
  for (Vertex s = 0; s < d.n; ++s) {
    for (Vertex t = 0; t < d.n; ++t) {
      if (t) os << ',';
      if constexpr (std::is_same_v<T, double>) {
        os << fmt_double(d.at(s, t));
      } else {
        os << to_string(d.at(s, t));
      }
      if (!want) continue;
      if constexpr (std::is_same_v<T, double>) {
        double a = d.at(s, t), b = want->at(s, t);
        bool ok = std::isinf(b) ? a == b : std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b));
        if (!ok) ++bad;
      } else {
        if (d.at(s, t) != want->at(s, t)) ++bad;
      }
    }
    os << '\n';
  }
  return bad;
}

}  // namespace

std::string csv_header() {
  return "# m2vpi-bench v1\n"
         "instance,algo,seed,param,outcome,wall_ms,edge_relaxations,locate_calls,kcycle_calls,peak_cells,baseline_ms\n";
}

std::string csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.instance << ',' << r.algo << ',' << r.seed << ',' << r.param << ',' << r.outcome << ',' << fmt_ms(r.wall_ms)
     << ',' << r.edge_relaxations << ',' << r.locate_calls << ',' << r.kcycle_calls << ',' << r.peak_cells << ',';
  if (r.baseline_ms >= 0) os << fmt_ms(r.baseline_ms);
  os << '\n';
  return os.str();
}

std::string format_solution(const BoundVector& x) {
  std::ostringstream os;
  for (std::size_t v = 0; v < x.size(); ++v) os << "x " << v + 1 << ' ' << to_string(x[v]) << '\n';
  return os.str();
}

CommandResult run_solve(const Graph& g, const SolveRequest& req, const std::string& instance_id) {
  CommandResult res;
  RunReport& r = res.report;
  r.instance = instance_id;
  r.algo = req.algo;
  r.seed = req.seed;
  reset_counters();
  auto t0 = Clock::now();
  SolveOutcome::Kind kind;
  BoundVector x;
  std::optional<Certificate> cert;
  if (req.algo == "simple") {
    SolveOutcome o = solve_simple(g, req.seed);
    kind = o.kind;
    x = std::move(o.x);
    cert = std::move(o.certificate);
  } else if (req.algo == "tradeoff") {
    std::size_t h = req.h.value_or(
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(g.n()))))));
    r.param = std::to_string(h);
    TradeoffOutcome o = solve_tradeoff(g, h, req.seed);
    kind = o.kind;
    x = std::move(o.x);
    cert = std::move(o.certificate);
  } else {
    throw std::invalid_argument("unknown algorithm '" + req.algo + "' (expected simple or tradeoff)");
  }
  r.wall_ms = ms_since(t0);
  take_counters(r);

  if (kind == SolveOutcome::Kind::Feasible) {
    if (verify_solution(g, x).kind != Verification::Kind::Verified) {
      r.outcome = "error";
      res.exit_code = kExitError;
      res.output = "error: solution failed re-verification\n";
      return res;
    }
    r.outcome = "feasible";
    res.exit_code = kExitFeasible;
    res.output = format_solution(x);
    return res;
  }
  if (!cert || !verify_certificate(g, *cert)) {
    r.outcome = "error";
    res.exit_code = kExitError;
    res.output = "error: certificate failed re-verification\n";
    return res;
  }
  r.outcome = "infeasible";
  res.exit_code = kExitInfeasible;
  res.output = format_certificate(*cert);
  return res;
}

CommandResult run_solve_text(const std::string& text, const SolveRequest& req) {
  Graph g;
  try {
    g = parse_instance_string(text);
  } catch (const ParseError& e) {
    CommandResult res;
    res.exit_code = kExitError;
    res.output = std::string("error: ") + e.what() + "\n";
    res.report.outcome = "error";
    return res;
  }
  return run_solve(g, req);
}

std::string run_gen(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  return print_instance(generate(kind, n, m, seed));
}

CommandResult run_dapsp(const Graph& g, const DapspRequest& req) {
  CommandResult res;
  RunReport& r = res.report;
  r.algo = req.use_float ? "dapsp-float" : "dapsp-exact";
  UniformInstance inst = as_uniform(g, req.gamma);
  DapspOptions opt{req.d};
  DapspStats st;
  std::ostringstream os;
  reset_counters();
  auto t0 = Clock::now();
  std::size_t bad = 0;
  if (req.use_float) {
    auto d = solve_dapsp<double>(inst, opt, &st);
    r.wall_ms = ms_since(t0);
    take_counters(r);  // before the oracle adds its own work
    std::optional<FloatDistances> want;
    if (req.check) {
      auto t1 = Clock::now();
      want = naive_dapsp_reduced<double>(inst);
      r.baseline_ms = ms_since(t1);
    }
    bad = write_matrix(os, d, want ? &*want : nullptr);
  } else {
    auto d = solve_dapsp<ExtRational>(inst, opt, &st);
    r.wall_ms = ms_since(t0);
    take_counters(r);
    std::optional<ExactDistances> want;
    if (req.check) {
      auto t1 = Clock::now();
      want = naive_dapsp_reduced<ExtRational>(inst);
      r.baseline_ms = ms_since(t1);
    }
    bad = write_matrix(os, d, want ? &*want : nullptr);
  }
  r.param = std::to_string(st.d);
  r.outcome = bad ? "mismatch" : "ok";
  if (req.check) os << "# check: " << (bad ? std::to_string(bad) + " mismatches" : std::string("ok")) << '\n';
  res.output = os.str();
  res.exit_code = bad ? kExitError : kExitFeasible;
  return res;
}

std::string run_bench(std::istream& suite) {
  std::ostringstream out;
  out << csv_header();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(suite, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string verb;
    if (!(ls >> verb)) continue;
    auto fail = [&](const std::string& what) { throw ParseError(lineno, what); };
    if (verb == "solve") {
      std::string kind, algo;
      std::size_t n = 0, m = 0;
      std::uint64_t seed = 0;
      if (!(ls >> kind >> n >> m >> seed >> algo)) fail("expected: solve <kind> <n> <m> <seed> <algo> [h]");
      SolveRequest req;
      req.algo = algo;
      req.seed = seed;
      std::size_t h = 0;
      if (ls >> h) req.h = h;
      Graph g = generate(kind, n, m, seed);
      std::string id = kind + "-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" + std::to_string(seed);
      out << csv_row(run_solve(g, req, id).report);
    } else if (verb == "dapsp") {
      std::size_t n = 0, m = 0;
      std::uint64_t seed = 0;
      std::string gamma, d, mode;
      if (!(ls >> n >> m >> seed >> gamma >> d >> mode)) fail("expected: dapsp <n> <m> <seed> <gamma> <d|auto> <mode>");
      if (mode != "exact" && mode != "float") fail("mode must be exact or float");
      DapspRequest req;
      req.gamma = parse_rational(gamma);
      if (d != "auto") req.d = std::stoul(d);
      req.use_float = mode == "float";
      req.check = true;
      UniformInstance inst = gen_dapsp_random(n, m, req.gamma, seed);
      CommandResult res = run_dapsp(inst.graph, req);
      res.report.instance = "dapsp-random-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" + std::to_string(seed);
      res.report.seed = seed;
      out << csv_row(res.report);
    } else {
      fail("unknown suite verb '" + verb + "'");
    }
  }
  return out.str();
}

}  // namespace m2vpi::cli
