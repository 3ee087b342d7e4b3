#include "m2vpi/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "m2vpi/counters.hpp"
#include "m2vpi/kcycle.hpp"
#include "m2vpi/reconstruct.hpp"

namespace m2vpi {

namespace {

struct Pair {
  Rational cost;
  Rational gain;
  bool operator==(const Pair&) const = default;
};

Rational interior(const ExtRational& a, const ExtRational& b) {
  if (a.is_finite() && b.is_finite()) return (a.value() + b.value()) / 2;
  if (b.is_finite()) return b.value() - 1;
  if (a.is_finite()) return a.value() + 1;
  return Rational(0);
}

ValueLocateOutcome default_locator(const Graph& g, Vertex t, const Rational& xi) { return locate_value(g, t, xi); }

// Incoming edges of t in G': summaries of P_{h,s} for every s, and the final
// probe point.
struct TargetResult {
  std::vector<std::optional<Pair>> walks;
  Rational probe;
};

TargetResult compress_target(const Graph& g, Vertex t, std::size_t h, const ValueLocator& locate) {
  const std::size_t n = g.n();
  ExtRational a = ExtRational::neg_inf(), b = ExtRational::pos_inf();
  std::vector<std::optional<Pair>> cur(n), next(n);
  cur[t] = Pair{Rational(0), Rational(1)};
  ScratchCells walks(4 * n);
  for (std::size_t j = 1; j <= h; ++j) {
    {
      ScratchCells scratch(4 * (g.m() + n));
      std::vector<Rational> xs;
      std::vector<Line> lines;
      for (Vertex v = 0; v < n; ++v) {
        lines.clear();
        if (cur[v]) lines.push_back(Line{cur[v]->gain, cur[v]->cost});
        for (EdgeId id : g.out_edges(v)) {
          const Edge& e = g.edge(id);
          if (!cur[e.v]) continue;
          lines.push_back(Line{Rational(e.g * cur[e.v]->gain), Rational(e.c + e.g * cur[e.v]->cost)});
        }
        if (lines.size() < 2) continue;
        for (Rational& x : envelope_breakpoints(lines, lower_envelope(lines))) {
          if (ExtRational(x) > a && ExtRational(x) < b) xs.push_back(std::move(x));
        }
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      // x^max_t stays in [a, b).
      std::size_t lo = 0, hi = xs.size();
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        ValueLocateOutcome o = locate(g, t, xs[mid]);
        if (o.answer == ValueAnswer::Infeasible) throw InfeasibleDetected(o.infeasibility);
        if (o.answer == ValueAnswer::Below) {
          b = ExtRational(xs[mid]);
          hi = mid;
        } else {
          a = ExtRational(xs[mid]);
          lo = mid + 1;
        }
      }
    }
    // No breakpoint lies inside (a, b): the minimizer at z0 is minimal on [a, b).
    const Rational z0 = interior(a, b);
    for (Vertex v = 0; v < n; ++v) {
      std::optional<Pair> best = cur[v];
      std::optional<Rational> best_val;
      if (best) best_val = best->cost + best->gain * z0;
      for (EdgeId id : g.out_edges(v)) {
        const Edge& e = g.edge(id);
        if (!cur[e.v]) continue;
        Pair cand{Rational(e.c + e.g * cur[e.v]->cost), Rational(e.g * cur[e.v]->gain)};
        Rational val = cand.cost + cand.gain * z0;
        if (!best_val || val < *best_val) {
          best_val = std::move(val);
          best = std::move(cand);
        }
      }
      next[v] = std::move(best);
    }
    counters().edge_relaxations += g.m();
    if (next == cur) break;
    std::swap(cur, next);
  }
  return TargetResult{std::move(cur), interior(a, b)};
}

// A walk of G' read as a walk of G, or nothing when some edge does not
// re-derive to the same summary.
std::optional<Walk> expand_walk(const Graph& g, const CompressedInstance& c, const Walk& w) {
  Walk out = Walk::empty_at(c.vertices[w.from]);
  for (EdgeId id : w.edges) {
    const Edge& e = c.graph.edge(id);
    Walk q = reconstruct_walk(g, c.vertices[e.u], c.vertices[e.v], c.h, c.probe[e.v]);
    if (q.summary.cost != e.c || q.summary.gain != e.g) return std::nullopt;
    out = concat(g, out, q);
  }
  return out;
}

std::optional<Certificate> expand_certificate(const Graph& g, const CompressedInstance& c, const Certificate& cert) {
  if (cert.kind == Certificate::Kind::NegUnitGain) {
    auto w = expand_walk(g, c, cert.cycle);
    if (!w) return std::nullopt;
    return Certificate::neg_unit_gain(std::move(*w));
  }
  auto le = expand_walk(g, c, cert.c_le);
  auto ge = expand_walk(g, c, cert.c_ge);
  auto p = expand_walk(g, c, cert.path);
  if (!le || !ge || !p) return std::nullopt;
  return Certificate::bicycle(std::move(*le), std::move(*ge), std::move(*p));
}

}  // namespace

CompressedInstance build_compressed(const Graph& g, const std::vector<Vertex>& s, std::size_t h,
                                    const ValueLocator& locator) {
  const ValueLocator& locate = locator ? locator : ValueLocator(default_locator);
  CompressedInstance out;
  out.vertices = s;
  out.h = h;
  const std::size_t r = s.size();
  std::vector<Edge> edges;
  std::vector<std::vector<std::optional<Pair>>> incoming(r);
  for (std::size_t ti = 0; ti < r; ++ti) {
    TargetResult tr = compress_target(g, s[ti], h, locate);
    out.probe.push_back(tr.probe);
    incoming[ti].resize(r);
    for (std::size_t si = 0; si < r; ++si) incoming[ti][si] = std::move(tr.walks[s[si]]);
  }
  for (std::size_t si = 0; si < r; ++si) {
    for (std::size_t ti = 0; ti < r; ++ti) {
      const auto& p = incoming[ti][si];
      if (!p) continue;
      if (si == ti && p->cost == 0 && p->gain == 1) continue;  // trivial inequality
      edges.push_back(Edge{0, static_cast<Vertex>(si), static_cast<Vertex>(ti), p->cost, p->gain});
    }
  }
  out.graph = Graph(r, std::move(edges));
  return out;
}

std::vector<Vertex> sample_vertex_set(std::size_t n, std::size_t h, std::mt19937_64& rng) {
  if (n == 0) return {};
  const double want = std::ceil(3.0 * (static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(h, 1))) *
                                std::log(static_cast<double>(n)));
  const std::size_t size = std::min(n, static_cast<std::size_t>(want));
  std::vector<Vertex> all(n), out;
  std::iota(all.begin(), all.end(), Vertex{0});
  std::sample(all.begin(), all.end(), std::back_inserter(out), size, rng);
  return out;
}

std::size_t tradeoff_last_phase(std::size_t n, std::size_t h) {
  const std::size_t phases = phase_schedule(n).size();
  std::size_t j = 0;
  while ((std::size_t{1} << j) < h) ++j;
  return phases == 0 ? 0 : std::min(j, phases - 1);
}

TradeoffOutcome solve_tradeoff(const Graph& g, std::size_t h, const TradeoffOptions& opt) {
  const std::size_t n = g.n();
  if (h == 0) throw std::invalid_argument("solve_tradeoff: h must be positive");
  KCycleContext ctx(g);
  PhiMemo local;
  PhiMemo* memo = opt.shared_memo ? opt.shared_memo : &local;
  TradeoffStats stats;
  stats.last_phase = tradeoff_last_phase(n, h);

  auto infeasible = [&](Certificate c) {
    if (!verify_certificate(g, c)) throw std::logic_error("tradeoff certificate does not verify");
    TradeoffOutcome out;
    out.kind = SolveOutcome::Kind::Infeasible;
    out.certificate = std::move(c);
    out.stats = stats;
    return out;
  };
  auto settle = [&](std::uint64_t seed) {
    SolveOptions so;
    so.seed = seed;
    so.shared_memo = memo;
    SolveOutcome s = solve_simple(g, so);
    stats.fallback = true;
    TradeoffOutcome out;
    out.kind = s.kind;
    out.x = std::move(s.x);
    out.certificate = std::move(s.certificate);
    out.stats = stats;
    return out;
  };

  std::size_t violations = 0;
  for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    stats.attempts = attempt + 1;
    const std::uint64_t seed = derive_seed(opt.seed, attempt);
    std::mt19937_64 rng(seed);
    PhaseRun run = run_phases(ctx, rng, memo, stats.last_phase);
    if (run.certificate) return infeasible(std::move(*run.certificate));
    BoundVector x = std::move(run.xstar.value);

    if (h < n) {
      std::vector<Vertex> s = sample_vertex_set(n, h, rng);
      stats.sample_size = s.size();
      CompressedInstance c;
      try {
        c = build_compressed(g, s, h, opt.locator);
      } catch (const InfeasibleDetected& e) {
        if (e.certificate() && verify_certificate(g, *e.certificate())) return infeasible(*e.certificate());
        return settle(seed);
      }
      stats.compressed_edges = c.graph.m();
      SolveOutcome sub = solve_simple(c.graph, derive_seed(seed, 1));
      if (sub.kind == SolveOutcome::Kind::Infeasible) {
        auto cert = expand_certificate(g, c, *sub.certificate);
        if (cert && verify_certificate(g, *cert)) return infeasible(std::move(*cert));
        return settle(seed);
      }
      for (std::size_t i = 0; i < s.size(); ++i)
        if (sub.x[i] < x[s[i]]) x[s[i]] = sub.x[i];
    }

    YStar ys = compute_ystar(g, x);
    Verification ver = verify_solution(g, ys.value);
    if (ver.kind == Verification::Kind::Verified) {
      TradeoffOutcome out;
      out.x = std::move(ys.value);
      out.stats = stats;
      return out;
    }
    if (ver.neg_unit_gain) return infeasible(Certificate::neg_unit_gain(std::move(*ver.neg_unit_gain)));
    if (ver.kind == Verification::Kind::Infeasible && ++violations > opt.violation_retries) return settle(seed);
  }
  throw std::runtime_error("tradeoff solver exceeded the attempt limit");
}

TradeoffOutcome solve_tradeoff(const Graph& g, std::size_t h, std::uint64_t seed) {
  TradeoffOptions opt;
  opt.seed = seed;
  return solve_tradeoff(g, h, opt);
}

}  // namespace m2vpi
