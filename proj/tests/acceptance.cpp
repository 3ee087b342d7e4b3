// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criterion 10 writes scaling_report.csv to the working
// directory and only fails if the report cannot be produced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "brute.hpp"
#include "m2vpi/certificate.hpp"
#include "m2vpi/cli.hpp"
#include "m2vpi/counters.hpp"
#include "m2vpi/dapsp.hpp"
#include "m2vpi/generators.hpp"
#include "m2vpi/kcycle.hpp"
#include "m2vpi/locate.hpp"
#include "m2vpi/oracle.hpp"
#include "m2vpi/reconstruct.hpp"
#include "m2vpi/solver.hpp"
#include "m2vpi/tradeoff.hpp"

using namespace m2vpi;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  std::size_t failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
};

Rational rq(std::mt19937_64& rng, long lo, long hi, long den) {
  Rational r(std::uniform_int_distribution<long>(lo, hi)(rng), std::uniform_int_distribution<long>(1, den)(rng));
  r.canonicalize();
  return r;
}

std::string tag(const char* what, std::uint64_t i) { return std::string(what) + " #" + std::to_string(i); }

// 1. solve_simple against the Shostak enumeration.
Verdict oracle_equivalence() {
  Verdict v;
  std::size_t feasible = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const std::size_t n = 1 + i % 7;
    const std::size_t m = std::min<std::size_t>(2 * n * n, 1 + (i * 5) % 14);
    Graph g = gen_random(n, m, 100000 + i, 8);
    ShostakResult ref = shostak_enumerate(g);
    SolveOutcome out = solve_simple(g, i);
    bool ok = (out.kind == SolveOutcome::Kind::Feasible) == ref.feasible;
    if (ok && ref.feasible) {
      ok = out.x == ref.x_le;
      ++feasible;
    }
    if (ok && !ref.feasible) ok = out.certificate && verify_certificate(g, *out.certificate);
    v.expect(ok, tag("instance", i));
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("500 instances, ") + std::to_string(feasible) + " feasible";
  return v;
}

// 2. Certificates on planted contradictions.
Verdict certificate_soundness() {
  Verdict v;
  std::size_t unit = 0, bicycle = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 9;
    Graph g = gen_infeasible_bicycle(n, 2 * n, 200000 + i);
    SolveOutcome out = solve_simple(g, i);
    bool ok = out.kind == SolveOutcome::Kind::Infeasible && out.certificate && verify_certificate(g, *out.certificate);
    v.expect(ok, tag("instance", i));
    if (ok) (out.certificate->kind == Certificate::Kind::NegUnitGain ? unit : bicycle)++;
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::to_string(unit) + " unit-gain, " + std::to_string(bicycle) +
              " bicycle certificates";
  return v;
}

// 3. phi_vk against closed-walk enumeration.
Verdict phi_correctness() {
  Verdict v;
  std::size_t certs = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const std::size_t n = 1 + i % 6;
    const std::size_t k = 1 + (i / 6) % 4;
    Graph g = i % 2 ? gen_random(n, n + i % 9, 300000 + i) : gen_feasible_random(n, n + i % 9, 300000 + i);
    const Vertex u = static_cast<Vertex>((i / 24) % n);
    KCycleResult r = phi_vk(g, u, k);
    brute::ClosedStats st = brute::closed_walks(g, u, k);
    if (r.infeasible()) {
      ++certs;
      v.expect(verify_certificate(g, *r.infeasibility) && (st.neg_unit || st.max_lower > st.min_upper),
               tag("certificate", i));
      continue;
    }
    bool ok = r.value == st.min_upper;
    if (ok && r.value.is_finite()) {
      const Walk& w = *r.witness;
      ok = validate_walk(g, w) && w.closed() && w.from == u && w.length() <= k && w.summary.gain < 1 &&
           ExtRational(Rational(w.summary.cost / (1 - w.summary.gain))) == r.value;
    }
    if (ok && !r.value.is_finite()) ok = !r.witness.has_value();
    v.expect(ok, tag("case", i));
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("300 cases, ") + std::to_string(certs) +
              " contradictions certified";
  return v;
}

bool cycle_case_matches(const Graph& g, Vertex u, std::size_t k, const Rational& xi) {
  CycleLocateOutcome o = locate_cycle(g, u, k, xi);
  brute::ClosedStats st = brute::closed_walks(g, u, k);
  auto lex = brute::lexmin(g, u, u, k, xi);
  if (!lex || o.cost + o.gain * xi != lex->first || o.gain != lex->second) return false;
  const ExtRational x(xi);
  switch (o.tag) {
    case CycleCase::Below: {
      Walk w = o.witness(g);
      return st.min_upper < x && w.summary.gain < 1 && w.summary.cost / (1 - w.summary.gain) < xi;
    }
    case CycleCase::Above: {
      Walk w = o.witness(g);
      return st.max_lower > x && w.summary.gain > 1 && w.summary.cost / (1 - w.summary.gain) > xi;
    }
    case CycleCase::StrictlyBetween:
      return st.max_lower <= x && x < st.min_upper;
    case CycleCase::NegUnitGain: {
      Walk w = o.witness(g);
      return st.neg_unit && w.summary.gain == 1 && w.summary.cost < 0;
    }
    case CycleCase::Equal:
      return st.min_upper == x && o.witness(g).closed();
  }
  return false;
}

// 4. Location primitives and single-violator determinism.
Verdict location_correctness() {
  Verdict v;
  std::mt19937_64 rng(4);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 6;
    Graph g = i % 2 ? gen_random(n, n + i % 8, 400000 + i) : gen_feasible_random(n, n + i % 8, 400000 + i);
    const Vertex u = static_cast<Vertex>(i % n);
    v.expect(cycle_case_matches(g, u, 1 + i % 4, rq(rng, -12, 12, 4)), tag("locate_cycle", i));
  }
  for (std::uint64_t i = 0; i < 150; ++i) {
    const std::size_t n = 1 + i % 6;
    Graph g = gen_feasible_random(n, std::min(2 * n * n, n + i % 10), 410000 + i);
    ShostakResult ref = shostak_enumerate(g);
    BoundVector xi(n);
    bool expect = false;
    for (std::size_t w = 0; w < n; ++w) {
      int mode = std::uniform_int_distribution<int>(0, 3)(rng);
      if (mode == 0) xi[w] = ExtRational::neg_inf();
      else if (mode == 1 && ref.x_le[w].is_finite()) xi[w] = ref.x_le[w];
      else xi[w] = ExtRational(rq(rng, -12, 12, 4));
      expect = expect || ref.x_le[w] < xi[w];
    }
    GlobalLocateOutcome r = locate_global(g, xi);
    bool ok = (r.kind == GlobalLocateOutcome::Kind::Violation) == expect;
    if (ok && r.certificate)
      ok = verify_locate_certificate(g, *r.certificate) && ref.x_le[r.certificate->source] < xi[r.certificate->source];
    v.expect(ok, tag("locate_global", i));
    for (Vertex t = 0; t < n; ++t) {
      Rational probe = rq(rng, -12, 12, 4);
      ValueAnswer a = locate_value(g, t, probe).answer;
      v.expect((a == ValueAnswer::Below) == (ref.x_le[t] < ExtRational(probe)), tag("locate_value", i));
    }
  }
  std::size_t tested = 0;
  for (std::uint64_t i = 0; tested < 50 && i < 1000; ++i) {
    const std::size_t n = 2 + i % 5;
    Graph g = gen_feasible_random(n, 2 * n + i % 5, 420000 + i);
    ShostakResult ref = shostak_enumerate(g);
    const Vertex u = static_cast<Vertex>(i % n);
    if (!ref.x_le[u].is_finite()) continue;
    ++tested;
    const Rational target = ref.x_le[u].value() + rq(rng, 1, 6, 3);
    std::optional<LocateCertificate> first;
    for (int p = 0; p < 20; ++p) {
      BoundVector xi(n);
      for (std::size_t w = 0; w < n; ++w) {
        if (w == u) xi[w] = ExtRational(target);
        else if (!ref.x_le[w].is_finite() || std::uniform_int_distribution<int>(0, 2)(rng) == 0)
          xi[w] = ExtRational::neg_inf();
        else xi[w] = ExtRational(Rational(ref.x_le[w].value() - rq(rng, 0, 6, 3)));
      }
      GlobalLocateOutcome r = locate_global(g, xi);
      if (!r.certificate) {
        v.expect(false, tag("determinism (no certificate)", i));
        break;
      }
      if (!first) {
        first = r.certificate;
        continue;
      }
      v.expect(r.certificate->source == first->source && r.certificate->path.edges == first->path.edges &&
                   r.certificate->cycle.edges == first->cycle.edges,
               tag("determinism", i));
    }
  }
  v.expect(tested == 50, "only " + std::to_string(tested) + " determinism instances");
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("200 cycle cases, 150 global instances, ") +
              std::to_string(tested) + " x 20 perturbations";
  return v;
}

// 5. Reconstruction against the lexicographic optimum, with linear memory.
Verdict reconstruction() {
  Verdict v;
  constexpr std::int64_t kCells = 8;
  std::int64_t worst = 0;
  std::mt19937_64 rng(5);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const std::size_t n = 1 + i % 6;
    const std::size_t k = 1 + (i / 6) % 5;
    Graph g = gen_random(n, n + (i * 7) % 10, 500000 + i);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    Vertex s = pick(rng), t = pick(rng);
    Rational alpha = rq(rng, -8, 8, 4);
    auto ref = brute::lexmin(g, s, t, k, alpha);
    reset_counters();
    if (!ref) {
      bool threw = false;
      try {
        reconstruct_walk(g, s, t, k, alpha);
      } catch (const NoWalk&) {
        threw = true;
      }
      v.expect(threw, tag("missing NoWalk", i));
      continue;
    }
    Walk w = reconstruct_walk(g, s, t, k, alpha);
    bool ok = validate_walk(g, w) && w.from == s && w.to == t && w.length() <= k &&
              w.summary.cost + w.summary.gain * alpha == ref->first && w.summary.gain == ref->second;
    v.expect(ok, tag("case", i));
    const std::int64_t peak = counters().peak_cells;
    worst = std::max(worst, peak * 1000 / static_cast<std::int64_t>(n + k));
    v.expect(peak <= kCells * static_cast<std::int64_t>(n + k) && counters().live_cells == 0, tag("memory", i));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "300 cases, peak cells <= %.2f (n + k), bound %lld (n + k)",
                static_cast<double>(worst) / 1000.0, static_cast<long long>(kCells));
  v.detail += (v.detail.empty() ? "" : " | ") + std::string(buf);
  return v;
}

// 6. Trade-off solver against the simple solver.
Verdict tradeoff_agreement() {
  Verdict v;
  std::size_t fallbacks = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 29;
    Graph g = gen_feasible_random(n, 2 * n, 600000 + i);
    SolveOutcome ref = solve_simple(g, i);
    if (ref.kind != SolveOutcome::Kind::Feasible) {
      v.expect(false, tag("generator produced infeasible", i));
      continue;
    }
    for (std::size_t h : {std::size_t(1), std::size_t(2), std::size_t(4), std::size_t(8), n}) {
      TradeoffOutcome t = solve_tradeoff(g, h, i * 31 + h);
      fallbacks += t.stats.fallback;
      v.expect(t.kind == SolveOutcome::Kind::Feasible && t.x == ref.x, tag("instance", i) + " h=" + std::to_string(h));
    }
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("1000 runs, ") + std::to_string(fallbacks) +
              " settled by the simple solver";
  return v;
}

// 7. First-attempt success rate and sample counts.
Verdict success_probability() {
  Verdict v;
  Graph g = gen_feasible_random(20, 40, 7);
  auto sched = phase_schedule(g.n());
  std::vector<std::uint64_t> want;
  for (const auto& [t, k] : sched) want.push_back(t);
  std::size_t first = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SolveOutcome out = solve_simple(g, seed);
    v.expect(out.kind == SolveOutcome::Kind::Feasible, tag("seed", seed));
    first += out.stats.attempts == 1;
    v.expect(out.stats.first_attempt_samples == want, tag("sample counts, seed", seed));
  }
  // ceil(n / 2^j) (l + 2 - j)^3 with l = floor(log2 n)
  const std::size_t n = g.n();
  const std::size_t l = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
  for (std::size_t j = 0; j < want.size(); ++j) {
    std::uint64_t c = (n + (std::size_t(1) << j) - 1) >> j;
    std::uint64_t b = l + 2 - j;
    v.expect(want[j] == c * b * b * b, "schedule phase " + std::to_string(j));
  }
  v.expect(want.size() == l + 1, "schedule length");
  v.expect(3 * first >= 200, "first-attempt rate below 1/3");
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("first attempt verified in ") + std::to_string(first) +
              "/200 runs";
  return v;
}

Rational pick_gamma(std::uint64_t i) {
  static const Rational gs[] = {Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(9, 10), Rational(1, 3)};
  return gs[i % 5];
}

// 8. Discounted APSP driver against the naive oracle.
Verdict dapsp_equivalence() {
  Verdict v;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 30;
    const std::size_t m = std::min(n * n, (i * 7) % (3 * n + 1));
    UniformInstance inst = gen_dapsp_random(n, m, pick_gamma(i), 800000 + i);
    ExactDistances want = naive_dapsp_reduced<ExtRational>(inst);
    for (std::optional<std::size_t> d : {std::optional<std::size_t>(2), std::optional<std::size_t>(3),
                                         std::optional<std::size_t>()}) {
      ExactDistances got = solve_dapsp<ExtRational>(inst, DapspOptions{d});
      v.expect(got.d == want.d, tag("exact instance", i) + " d=" + (d ? std::to_string(*d) : "auto"));
    }
  }
  double worst = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 10 + 5 * i;
    UniformInstance inst = gen_dapsp_random(n, 3 * n, pick_gamma(i), 810000 + i);
    FloatDistances want = naive_dapsp_reduced<double>(inst);
    FloatDistances got = solve_dapsp<double>(inst);
    for (std::size_t p = 0; p < want.d.size(); ++p) {
      double a = got.d[p], b = want.d[p];
      if (std::isinf(b)) {
        v.expect(a == b, tag("float infinity", i));
        continue;
      }
      double rel = std::fabs(a - b) / std::max(1.0, std::fabs(b));
      worst = std::max(worst, rel);
    }
  }
  v.expect(worst <= 1e-9, "float relative error above 1e-9");
  UniformInstance loop = make_uniform(1, {{0, 0, Rational(-2)}}, Rational(1, 2));
  v.expect(solve_dapsp<ExtRational>(loop).at(0, 0) == ExtRational(Rational(-4)), "self-loop distance is not -4");
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst float relative error %.2e", worst);
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("200 exact instances x 3 d; ") + buf;
  return v;
}

// 9. Suffix and prefix optimality; hitting sets.
Verdict structural() {
  Verdict v;
  std::size_t walks = 0, pairs = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const std::size_t n = 2 + i % 7;
    UniformInstance inst = gen_dapsp_random(n, std::min(n * n, 2 * n + i % 5), pick_gamma(i), 900000 + i);
    ReducedInstance r = madani_reduce(inst);
    const Graph& gp = r.reduced.graph;
    const std::size_t N = gp.n();
    DistKernel<ExtRational> kr(r.reduced);
    ExactDistances naive = naive_dapsp(gp, inst.gamma);
    for (Vertex s = 0; s < N; ++s) {
      SourceTable<ExtRational> tb = delta_from_source(kr, s, N - 1, true);
      for (Vertex t : r.targets()) {
        if (!naive.at(s, t).is_finite()) continue;
        std::size_t ell = 0;
        while (ell < N && tb.exact[ell][t] != naive.at(s, t)) ++ell;
        if (ell == N) {
          v.expect(false, tag("distance not attained", i));
          continue;
        }
        Walk w = *tb.walk(gp, t, ell);
        ++walks;
        Vertex at = s;
        Rational pre(0), disc(1);
        for (std::size_t e = 0; e < w.edges.size(); ++e) {
          std::vector<EdgeId> rest(w.edges.begin() + static_cast<std::ptrdiff_t>(e), w.edges.end());
          v.expect(ExtRational(make_walk(gp, rest).summary.cost) == naive.at(at, t), tag("suffix", i));
          const Edge& ed = gp.edge(w.edges[e]);
          pre += disc * ed.c;
          disc *= inst.gamma;
          at = ed.v;
          v.expect(ExtRational(pre) == tb.exact[e + 1][at], tag("prefix", i));
        }
      }
    }
  }
  for (std::uint64_t i = 0; i < 40; ++i) {
    const std::size_t n = 2 + i % 2;  // G' has at most 9 vertices
    UniformInstance inst = gen_dapsp_random(n, std::min(n * n, 1 + i % (2 * n + 1)), pick_gamma(i), 910000 + i);
    ReducedInstance r = madani_reduce(inst);
    const Graph& gp = r.reduced.graph;
    const std::size_t N = gp.n();
    DistKernel<ExtRational> kr(r.reduced);
    ExactDistances naive = naive_dapsp(gp, inst.gamma);
    std::vector<Vertex> S(N);
    std::iota(S.begin(), S.end(), 0);
    std::vector<Vertex> targets;
    for (Vertex u = 0; u < n; ++u) {
      targets.push_back(r.target_of(u));
      targets.push_back(r.exit_of(u));
    }
    for (std::size_t k = 1; k <= 3; ++k) {
      HittingSet hs = build_hitting_set(kr, S, k);
      v.expect(hs.X.size() <= hitting_set_bound(N, k, hs.family_size), tag("greedy bound", i));
      for (Vertex s : S)
        for (Vertex t : targets) {
          if (!naive.at(s, t).is_finite()) continue;
          std::vector<Walk> optimal;
          for_each_simple_path(gp, s, [&](const Walk& p) {
            if (p.to == t && ExtRational(p.summary.cost) == naive.at(s, t)) optimal.push_back(p);
          });
          std::size_t ell = SIZE_MAX;
          for (const auto& p : optimal) ell = std::min(ell, p.length());
          if (ell < k) continue;
          ++pairs;
          bool met = false;
          for (const auto& p : optimal) {
            std::vector<Vertex> vs{p.from};
            for (EdgeId e : p.edges) vs.push_back(gp.edge(e).v);
            for (std::size_t j = 0; j <= k && j < vs.size(); ++j)
              met = met || std::binary_search(hs.X.begin(), hs.X.end(), vs[j]);
          }
          v.expect(met, tag("hitting", i));
        }
    }
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::to_string(walks) + " optimal walks, " + std::to_string(pairs) +
              " long pairs hit";
  return v;
}

// 10. Scaling report.
Verdict scaling_report() {
  Verdict v;
  using Clock = std::chrono::steady_clock;
  std::ofstream csv("scaling_report.csv");
  if (!csv) {
    v.expect(false, "cannot write scaling_report.csv");
    return v;
  }
  csv << cli::csv_header();
  std::ostringstream summary;
  Graph g = gen_feasible_random(48, 96, 10);
  summary << "edge relaxations by h:";
  for (std::size_t h : {1, 2, 4, 8, 16, 32}) {
    reset_counters();
    auto t0 = Clock::now();
    TradeoffOutcome t = solve_tradeoff(g, h, 10);
    cli::RunReport r;
    r.instance = "feasible-random-n48-m96-s10";
    r.algo = "tradeoff";
    r.seed = 10;
    r.param = std::to_string(h);
    r.outcome = t.kind == SolveOutcome::Kind::Feasible ? "feasible" : "infeasible";
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r.edge_relaxations = counters().edge_relaxations;
    r.locate_calls = counters().locate_calls;
    r.kcycle_calls = counters().kcycle_calls;
    r.peak_cells = counters().peak_cells;
    csv << cli::csv_row(r);
    summary << ' ' << h << ':' << r.edge_relaxations;
  }
  for (std::size_t n : {100, 250, 500}) {
    cli::DapspRequest req;
    req.gamma = Rational(9, 10);
    req.use_float = true;
    req.check = true;
    UniformInstance inst = gen_dapsp_random(n, 4 * n, req.gamma, 11);
    cli::CommandResult res = cli::run_dapsp(inst.graph, req);
    res.report.instance = "dapsp-random-n" + std::to_string(n) + "-m" + std::to_string(4 * n) + "-s11";
    res.report.seed = 11;
    csv << cli::csv_row(res.report);
    v.expect(res.report.outcome == "ok", "dapsp float mismatch at n=" + std::to_string(n));
    char buf[96];
    std::snprintf(buf, sizeof buf, "; n=%zu driver %.0f ms vs naive %.0f ms", n, res.report.wall_ms,
                  res.report.baseline_ms);
    summary << buf;
  }
  v.detail += (v.detail.empty() ? "" : " | ") + std::string("informative: ") + summary.str() +
              " (scaling_report.csv)";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> all = {
      {"oracle equivalence (2VPI)", oracle_equivalence},
      {"certificate soundness", certificate_soundness},
      {"k-cycle bound correctness", phi_correctness},
      {"location correctness", location_correctness},
      {"walk reconstruction", reconstruction},
      {"trade-off agreement", tradeoff_agreement},
      {"first-attempt success probability", success_probability},
      {"discounted APSP equivalence", dapsp_equivalence},
      {"structural properties", structural},
      {"scaling report", scaling_report},
  };
  bool all_pass = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = all[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_pass = all_pass && v.pass;
    std::printf("%s criterion %zu: %s (%.1fs) %s\n", v.pass ? "PASS" : "FAIL", i + 1, all[i].name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
