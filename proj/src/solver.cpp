#include "m2vpi/solver.hpp"

#include <algorithm>
#include <memory>

#include "m2vpi/counters.hpp"
#include "m2vpi/reconstruct.hpp"

namespace m2vpi {

std::vector<std::pair<std::uint64_t, std::size_t>> phase_schedule(std::size_t n) {
  std::vector<std::pair<std::uint64_t, std::size_t>> out;
  if (n == 0) return out;
  std::size_t ell = 0;
  while ((std::size_t{2} << ell) <= n) ++ell;
  for (std::size_t j = 0; j <= ell; ++j) {
    std::uint64_t blocks = (n + (std::size_t{1} << j) - 1) >> j;
    std::uint64_t w = ell + 2 - j;
    out.emplace_back(blocks * w * w * w, std::min(std::size_t{2} << j, n));
  }
  return out;
}

PhaseRun run_phases(const KCycleContext& ctx, std::mt19937_64& rng, PhiMemo* memo, std::optional<std::size_t> last) {
  const Graph& g = ctx.graph();
  const std::size_t n = g.n();
  PhaseRun run;
  run.xstar.value.assign(n, ExtRational::pos_inf());
  run.xstar.k.assign(n, 0);
  auto schedule = phase_schedule(n);
  if (n == 0) return run;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    if (last && j > *last) break;
    auto [samples, k] = schedule[j];
    run.samples.push_back(samples);
    for (std::uint64_t s = 0; s < samples; ++s) {
      Vertex v = pick(rng);
      KCycleResult r;
      auto key = std::make_pair(v, k);
      auto it = memo ? memo->find(key) : PhiMemo::iterator{};
      if (memo && it != memo->end()) {
        r = it->second;
      } else {
        r = phi_vk(ctx, v, k);
        if (memo) {
          KCycleResult stored = r;
          stored.witness.reset();  // re-derived on demand
          memo->emplace(key, std::move(stored));
        }
      }
      if (r.infeasible()) {
        run.certificate = std::move(r.infeasibility);
        return run;
      }
      if (r.value < run.xstar.value[v]) {
        run.xstar.value[v] = r.value;
        run.xstar.k[v] = k;
      }
    }
  }
  return run;
}

YStar compute_ystar(const Graph& g, const BoundVector& xstar, std::optional<std::size_t> steps) {
  const std::size_t n = g.n();
  YStar out;
  out.steps = steps.value_or(3 * n);
  out.value = xstar;
  out.endpoint.assign(n, std::nullopt);
  std::vector<Vertex> active, touched;
  for (Vertex v = 0; v < n; ++v) {
    if (xstar[v].is_finite()) {
      out.endpoint[v] = v;
      active.push_back(v);
    }
  }
  // prev mirrors the state at the start of a step; only in-edges of entries
  // changed in the previous step can improve.
  BoundVector prev = out.value;
  std::vector<std::optional<Vertex>> prev_ep = out.endpoint;
  std::vector<char> mark(n, 0);
  for (std::size_t step = 0; step < out.steps && !active.empty(); ++step) {
    touched.clear();
    std::uint64_t relaxed = 0;
    for (Vertex v : active) {
      for (EdgeId id : g.in_edges(v)) {
        const Edge& e = g.edge(id);
        ++relaxed;
        ExtRational cand = affine(e.c, e.g, prev[v]);
        if (cand < out.value[e.u]) {
          out.value[e.u] = std::move(cand);
          out.endpoint[e.u] = prev_ep[v];
          if (!mark[e.u]) {
            mark[e.u] = 1;
            touched.push_back(e.u);
          }
        }
      }
    }
    counters().edge_relaxations += relaxed;
    for (Vertex u : touched) {
      mark[u] = 0;
      prev[u] = out.value[u];
      prev_ep[u] = out.endpoint[u];
    }
    active.swap(touched);
  }
  return out;
}

UnboundedCheck check_unbounded(const Graph& g, const BoundVector& x) {
  const std::size_t n = g.n();
  UnboundedCheck out;
  std::vector<EdgeId> inner;
  for (const Edge& e : g.edges())
    if (x[e.u].is_pos_inf() && x[e.v].is_pos_inf()) inner.push_back(e.id);
  if (inner.empty()) return out;
  // pi_a = min gain over walks from a inside U; settles within n - 1 rounds
  // iff U has no cycle with gain < 1.
  std::vector<Rational> pi(n, Rational(1)), prev;
  for (std::size_t round = 0; round <= n; ++round) {
    prev = pi;
    bool changed = false;
    for (EdgeId id : inner) {
      const Edge& e = g.edge(id);
      Rational cand = e.g * prev[e.v];
      if (cand < pi[e.u]) {
        pi[e.u] = cand;
        changed = true;
        if (round == n && !out.gain_below_one) out.gain_below_one = e.u;
      }
    }
    counters().edge_relaxations += inner.size();
    if (!changed) break;
  }
  if (out.gain_below_one) return out;
  // Scaled gain g pi_v / pi_u >= 1; unit-gain cycles lie on edges where it is 1.
  // With x_u = pi_u z_u the cost becomes c / pi_u and cycle costs keep their sign.
  std::vector<EdgeId> unit;
  std::vector<Rational> w(g.m());
  for (EdgeId id : inner) {
    const Edge& e = g.edge(id);
    if (e.g * pi[e.v] == pi[e.u]) {
      unit.push_back(id);
      w[id] = e.c / pi[e.u];
    }
  }
  std::vector<Rational> z(n, Rational(0));
  std::vector<std::optional<EdgeId>> parent(n);
  std::optional<Vertex> hit;
  for (std::size_t round = 0; round < n; ++round) {
    hit.reset();
    for (EdgeId id : unit) {
      const Edge& e = g.edge(id);
      Rational cand = w[id] + z[e.v];
      if (cand < z[e.u]) {
        z[e.u] = cand;
        parent[e.u] = id;
        hit = e.u;
      }
    }
    counters().edge_relaxations += unit.size();
    if (!hit) return out;
  }
  // A vertex relaxed in round n leads along parents into a negative cycle.
  Vertex a = *hit;
  for (std::size_t i = 0; i < n; ++i) a = g.edge(*parent[a]).v;
  std::vector<EdgeId> cyc;
  Vertex b = a;
  do {
    cyc.push_back(*parent[b]);
    b = g.edge(*parent[b]).v;
  } while (b != a);
  out.neg_unit_gain = make_walk(g, cyc);
  return out;
}

Verification verify_solution(const Graph& g, const BoundVector& x) {
  const std::size_t n = g.n();
  Verification out;
  Evaluation ev = evaluate_solution(g, x);
  if (!ev.feasible) {
    out.kind = Verification::Kind::Infeasible;
    out.violated = ev.violated;
    return out;
  }
  // One-step slack: a finite vertex with no tight out-edge can be raised.
  std::vector<EdgeId> tight;
  std::vector<bool> has_tight(n, false);
  for (const Edge& e : g.edges()) {
    if (x[e.u].is_finite() && x[e.v].is_finite() && affine(e.c, e.g, x[e.v]) == x[e.u]) {
      tight.push_back(e.id);
      has_tight[e.u] = true;
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    if (x[u].is_finite() && !has_tight[u]) {
      out.kind = Verification::Kind::NotMaximal;
      out.evidence = u;
      return out;
    }
  }
  // d^i_a = min gain over tight walks from a with <= i edges. A vertex still
  // changing in round n + 1 reaches a tight closed walk with gain < 1, and
  // every such closed walk contains one.
  std::vector<Rational> d(n, Rational(1)), prev;
  std::vector<bool> marked(n, false);
  for (std::size_t round = 0; round <= n; ++round) {
    prev = d;
    bool changed = false;
    for (EdgeId id : tight) {
      const Edge& e = g.edge(id);
      Rational cand = e.g * prev[e.v];
      if (cand < d[e.u]) {
        d[e.u] = cand;
        changed = true;
        if (round == n) marked[e.u] = true;
      }
    }
    counters().edge_relaxations += tight.size();
    if (!changed) break;
  }
  // Good vertices: tight-reach a marked vertex.
  std::vector<std::vector<EdgeId>> tight_in(n);
  for (EdgeId id : tight) tight_in[g.edge(id).v].push_back(id);
  std::vector<bool> good = marked;
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v)
    if (marked[v]) stack.push_back(v);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId id : tight_in[v]) {
      Vertex u = g.edge(id).u;
      if (!good[u]) {
        good[u] = true;
        stack.push_back(u);
      }
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    if (x[u].is_finite() && !good[u]) {
      out.kind = Verification::Kind::NotMaximal;
      out.evidence = u;
      return out;
    }
  }
  UnboundedCheck ub = check_unbounded(g, x);
  if (ub.neg_unit_gain) {
    out.kind = Verification::Kind::Infeasible;
    out.neg_unit_gain = std::move(ub.neg_unit_gain);
  } else if (ub.gain_below_one) {
    out.kind = Verification::Kind::NotMaximal;
    out.evidence = ub.gain_below_one;
  }
  return out;
}

namespace {

constexpr std::size_t kMaxDoublings = 12;

Walk cycle_witness(const SideResult& side, Vertex w) {
  KCycleResult r = phi_vk(*side.ctx, w, side.xstar.k[w]);
  if (!r.witness || r.value != side.xstar.value[w]) throw std::logic_error("cycle witness does not match x*");
  return *r.witness;
}

}  // namespace

Certificate assemble_infeasibility_certificate(const Graph& g, const SideResult& forward, const SideResult& reverse) {
  const Graph& gr = reverse.ctx->graph();
  const std::size_t n = g.n();
  for (Vertex v = 0; v < n; ++v) {
    const ExtRational& up = forward.ystar.value[v];
    const ExtRational& rv = reverse.ystar.value[v];
    if (!up.is_finite() || !rv.is_finite() || !(up < -rv)) continue;
    Vertex w = *forward.ystar.endpoint[v];
    Vertex u = *reverse.ystar.endpoint[v];
    Walk d = cycle_witness(forward, w);
    Walk dr = cycle_witness(reverse, u);
    Walk s = reconstruct_walk(g, v, w, forward.ystar.steps, forward.xstar.value[w].value());
    Walk sr = reconstruct_walk(gr, v, u, reverse.ystar.steps, reverse.xstar.value[u].value());
    Walk path = concat(g, unreverse_walk(g, sr), s);
    return Certificate::bicycle(std::move(d), unreverse_walk(g, dr), std::move(path));
  }
  throw NoWitnessVertex("no vertex separates the forward and reverse bounds");
}

Certificate unreverse_certificate(const Graph& g, const Certificate& rc) {
  if (rc.kind == Certificate::Kind::NegUnitGain) return Certificate::neg_unit_gain(unreverse_walk(g, rc.cycle));
  return Certificate::bicycle(unreverse_walk(g, rc.c_ge), unreverse_walk(g, rc.c_le), unreverse_walk(g, rc.path));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SolveOutcome solve_simple(const Graph& g, const SolveOptions& opt) {
  KCycleContext ctx(g);
  PhiMemo local;
  PhiMemo* memo = opt.shared_memo ? opt.shared_memo : &local;
  std::unique_ptr<Graph> gr;
  std::unique_ptr<KCycleContext> ctx_r;
  PhiMemo memo_r;

  auto infeasible = [&](Certificate c, SolveStats st) {
    if (!verify_certificate(g, c)) throw std::logic_error("assembled certificate does not verify");
    SolveOutcome out;
    out.kind = SolveOutcome::Kind::Infeasible;
    out.certificate = std::move(c);
    out.stats = std::move(st);
    return out;
  };

  SolveStats stats;
  for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    stats.attempts = attempt + 1;
    std::mt19937_64 rng(derive_seed(opt.seed, attempt));
    PhaseRun run = run_phases(ctx, rng, memo);
    if (attempt == 0) stats.first_attempt_samples = run.samples;
    if (run.certificate) return infeasible(std::move(*run.certificate), stats);

    YStar ys = compute_ystar(g, run.xstar.value);
    Verification ver = verify_solution(g, ys.value);
    if (ver.kind == Verification::Kind::Verified) {
      SolveOutcome out;
      out.x = std::move(ys.value);
      out.stats = stats;
      return out;
    }
    if (ver.kind == Verification::Kind::NotMaximal) continue;
    if (ver.neg_unit_gain) return infeasible(Certificate::neg_unit_gain(std::move(*ver.neg_unit_gain)), stats);

    if (!gr) {
      gr = std::make_unique<Graph>(reverse_instance(g));
      ctx_r = std::make_unique<KCycleContext>(*gr);
    }
    PhaseRun run_r = run_phases(*ctx_r, rng, &memo_r);
    if (run_r.certificate) return infeasible(unreverse_certificate(g, *run_r.certificate), stats);
    // Longer walks only lower y* and y^R; a negative unit-gain cycle between
    // finite bounds shows up once it is traversed often enough.
    const std::size_t base = 3 * g.n();
    for (std::size_t steps = base; steps <= base << kMaxDoublings; steps *= 2) {
      YStar yf = steps == base ? ys : compute_ystar(g, run.xstar.value, steps);
      YStar yr = compute_ystar(*gr, run_r.xstar.value, steps);
      try {
        return infeasible(assemble_infeasibility_certificate(g, SideResult{&ctx, run.xstar, yf},
                                                             SideResult{ctx_r.get(), run_r.xstar, yr}),
                          stats);
      } catch (const NoWitnessVertex&) {
      }
      if (steps == base) {
        UnboundedCheck uf = check_unbounded(g, yf.value);
        if (uf.neg_unit_gain) return infeasible(Certificate::neg_unit_gain(std::move(*uf.neg_unit_gain)), stats);
        UnboundedCheck ur = check_unbounded(*gr, yr.value);
        if (ur.neg_unit_gain) return infeasible(Certificate::neg_unit_gain(unreverse_walk(g, *ur.neg_unit_gain)), stats);
      }
    }
  }
  throw std::runtime_error("solver exceeded the attempt limit");
}

SolveOutcome solve_simple(const Graph& g, std::uint64_t seed) {
  SolveOptions opt;
  opt.seed = seed;
  return solve_simple(g, opt);
}

std::vector<EdgeId> dmdp_policy(const Graph& g, const BoundVector& xmax) {
  std::vector<EdgeId> pol(g.n());
  for (Vertex u = 0; u < g.n(); ++u) {
    bool found = false;
    if (xmax[u].is_finite()) {
      for (EdgeId id : g.out_edges(u)) {
        const Edge& e = g.edge(id);
        if (affine(e.c, e.g, xmax[e.v]) == xmax[u] && (!found || id < pol[u])) {
          pol[u] = id;
          found = true;
        }
      }
    }
    if (!found) throw NoTightEdge(u);
  }
  return pol;
}

}  // namespace m2vpi
