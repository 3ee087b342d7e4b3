#include "m2vpi/dapsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "m2vpi/counters.hpp"
#include "m2vpi/oracle.hpp"

namespace m2vpi {

namespace {

// Finite-only arithmetic for the two distance types.
inline ExtRational lin(const ExtRational& a, const ExtRational& b, const ExtRational& x) {
  return ExtRational(Rational(a.value() + b.value() * x.value()));
}
inline double lin(double a, double b, double x) { return a + b * x; }

// x where line (a2, b2) meets line (a1, b1); requires b1 != b2.
inline ExtRational cross(const ExtRational& a1, const ExtRational& b1, const ExtRational& a2, const ExtRational& b2) {
  return ExtRational(Rational((a2.value() - a1.value()) / (b1.value() - b2.value())));
}
inline double cross(double a1, double b1, double a2, double b2) { return (a2 - a1) / (b1 - b2); }

// Strongly connected components, numbered in reverse topological order.
std::vector<std::size_t> components(const Graph& g, std::size_t& count) {
  const std::size_t n = g.n();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<Vertex> stack;
  std::vector<char> on_stack(n, 0);
  std::size_t next = 0;
  count = 0;
  struct Frame {
    Vertex v;
    std::size_t pos;
  };
  std::vector<Frame> frames;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& out = g.out_edges(f.v);
      if (f.pos < out.size()) {
        Vertex w = g.edge(out[f.pos++]).v;
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

// Values of the stationary policy `policy` (edge per vertex of `verts`).
// Every policy walk ends in a cycle inside the component.
void evaluate_policy(const Graph& g, const Rational& gamma, const std::vector<Vertex>& verts,
                     const std::vector<EdgeId>& policy, std::vector<Rational>& y) {
  const std::size_t n = g.n();
  // 0 = unvisited, 1 = on current trail, 2 = done
  std::vector<char> state(n, 0);
  std::vector<Vertex> trail;
  for (Vertex start : verts) {
    if (state[start] == 2) continue;
    trail.clear();
    Vertex v = start;
    while (state[v] == 0) {
      state[v] = 1;
      trail.push_back(v);
      v = g.edge(policy[v]).v;
    }
    std::size_t settled = trail.size();
    if (state[v] == 1) {
      // v closes a new cycle: trail[pos..] in order.
      std::size_t pos = static_cast<std::size_t>(std::find(trail.begin(), trail.end(), v) - trail.begin());
      Rational num(0), disc(1);
      for (std::size_t i = pos; i < trail.size(); ++i) {
        num += disc * g.edge(policy[trail[i]]).c;
        disc *= gamma;
      }
      y[v] = num / (1 - disc);
      state[v] = 2;
      for (std::size_t i = trail.size(); i-- > pos + 1;) {
        const Edge& e = g.edge(policy[trail[i]]);
        y[trail[i]] = e.c + gamma * y[e.v];
        state[trail[i]] = 2;
      }
      settled = pos;
    }
    for (std::size_t i = settled; i-- > 0;) {
      const Edge& e = g.edge(policy[trail[i]]);
      y[trail[i]] = e.c + gamma * y[e.v];
      state[trail[i]] = 2;
    }
  }
}

}  // namespace

std::vector<Vertex> ReducedInstance::targets() const {
  std::vector<Vertex> t(n);
  for (Vertex v = 0; v < n; ++v) t[v] = target_of(v);
  return t;
}

std::vector<ExtRational> component_walk_values(const UniformInstance& inst) {
  const Graph& g = inst.graph;
  const Rational& gamma = inst.gamma;
  const std::size_t n = g.n();
  std::size_t count = 0;
  std::vector<std::size_t> comp = components(g, count);
  std::vector<std::vector<Vertex>> members(count);
  for (Vertex v = 0; v < n; ++v) members[comp[v]].push_back(v);

  std::vector<ExtRational> mu(n, ExtRational::pos_inf());
  std::vector<EdgeId> policy(n, 0);
  std::vector<Rational> y(n);
  for (const auto& verts : members) {
    bool cyclic = true;
    for (Vertex v : verts) {
      bool has = false;
      for (EdgeId id : g.out_edges(v)) {
        if (comp[g.edge(id).v] == comp[v]) {
          policy[v] = id;  // out_edges are in id order: the first internal edge
          has = true;
          break;
        }
      }
      if (!has) {
        cyclic = false;
        break;
      }
    }
    if (!cyclic) continue;  // a component with an internal edge has one at every vertex
    // Howard iteration: switch on strict improvement only, so it terminates.
    for (;;) {
      evaluate_policy(g, gamma, verts, policy, y);
      bool changed = false;
      for (Vertex v : verts) {
        EdgeId best = policy[v];
        Rational best_val = y[v];
        for (EdgeId id : g.out_edges(v)) {
          const Edge& e = g.edge(id);
          if (comp[e.v] != comp[v]) continue;
          Rational cand = e.c + gamma * y[e.v];
          if (cand < best_val) {
            best_val = cand;
            best = id;
          }
        }
        if (best != policy[v]) {
          policy[v] = best;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (Vertex v : verts) mu[v] = ExtRational(y[v]);
  }
  return mu;
}

ReducedInstance madani_reduce(const UniformInstance& inst) {
  const Graph& g = inst.graph;
  const std::size_t n = g.n();
  ReducedInstance r;
  r.n = n;
  r.mu = component_walk_values(inst);
  auto p1 = [](Vertex v) { return v; };
  auto p2 = [n](Vertex v) { return static_cast<Vertex>(n + v); };
  auto p3 = [n](Vertex v) { return static_cast<Vertex>(2 * n + v); };
  std::vector<std::tuple<Vertex, Vertex, Rational>> es;
  es.reserve(2 * g.m() + 3 * n);
  for (const Edge& e : g.edges()) es.emplace_back(p1(e.u), p1(e.v), e.c);
  for (Vertex v = 0; v < n; ++v) es.emplace_back(p1(v), p2(v), Rational(0));
  for (Vertex v = 0; v < n; ++v)
    if (r.mu[v].is_finite()) es.emplace_back(p1(v), p3(v), r.mu[v].value());
  for (const Edge& e : g.edges())
    if (e.u != e.v) es.emplace_back(p3(e.u), p3(e.v), Rational(0));
  for (Vertex v = 0; v < n; ++v) es.emplace_back(p3(v), p2(v), Rational(0));
  r.reduced = make_uniform(3 * n, es, inst.gamma);
  return r;
}

template <class T>
DistKernel<T>::DistKernel(const UniformInstance& inst)
    : g(&inst.graph), gamma(DistTraits<T>::from(inst.gamma)) {
  cost.reserve(inst.graph.m());
  for (const Edge& e : inst.graph.edges()) cost.push_back(DistTraits<T>::from(e.c));
}

template <class T>
std::vector<std::vector<T>> delta_to_target(const DistKernel<T>& kr, Vertex t, std::size_t k) {
  using D = DistTraits<T>;
  const Graph& g = *kr.g;
  std::vector<std::vector<T>> table;
  table.reserve(k + 1);
  table.emplace_back(g.n(), D::inf());
  table[0][t] = D::zero();
  for (std::size_t j = 1; j <= k; ++j) {
    const std::vector<T>& prev = table.back();
    std::vector<T> cur = prev;
    for (const Edge& e : g.edges()) {
      if (D::is_inf(prev[e.v])) continue;
      T cand = lin(kr.cost[e.id], kr.gamma, prev[e.v]);
      if (D::less(cand, cur[e.u])) cur[e.u] = std::move(cand);
    }
    counters().edge_relaxations += g.m();
    table.push_back(std::move(cur));
  }
  return table;
}

template <class T>
std::optional<Walk> SourceTable<T>::walk(const Graph& g, Vertex t, std::size_t j) const {
  if (j >= exact.size() || DistTraits<T>::is_inf(exact[j][t])) return std::nullopt;
  if (j == 0) return Walk::empty_at(t);
  if (pred.size() <= j) return std::nullopt;
  std::vector<EdgeId> ids(j);
  Vertex cur = t;
  for (std::size_t i = j; i >= 1; --i) {
    EdgeId id = *pred[i][cur];
    ids[i - 1] = id;
    cur = g.edge(id).u;
  }
  return make_walk(g, ids);
}

template <class T>
SourceTable<T> delta_from_source(const DistKernel<T>& kr, Vertex s, std::size_t k, bool keep_walks) {
  using D = DistTraits<T>;
  const Graph& g = *kr.g;
  const std::size_t n = g.n();
  SourceTable<T> tb;
  tb.s = s;
  tb.exact.reserve(k + 1);
  tb.exact.emplace_back(n, D::inf());
  tb.exact[0][s] = D::zero();
  if (keep_walks) tb.pred.emplace_back(n);
  T disc = D::from(Rational(1));  // gamma^(j-1)
  for (std::size_t j = 1; j <= k; ++j) {
    const std::vector<T>& prev = tb.exact.back();
    std::vector<T> cur(n, D::inf());
    std::vector<std::optional<EdgeId>> pr;
    if (keep_walks) pr.assign(n, std::nullopt);
    for (const Edge& e : g.edges()) {
      if (D::is_inf(prev[e.u])) continue;
      T cand = lin(prev[e.u], disc, kr.cost[e.id]);
      if (D::less(cand, cur[e.v])) {
        cur[e.v] = std::move(cand);
        if (keep_walks) pr[e.v] = e.id;
      }
    }
    counters().edge_relaxations += g.m();
    tb.exact.push_back(std::move(cur));
    if (keep_walks) tb.pred.push_back(std::move(pr));
    disc = D::mul(disc, kr.gamma);
  }
  return tb;
}

template <class T>
std::vector<T> EnvelopeStructure<T>::query(Vertex v, const std::vector<T>& xs) const {
  const auto& segs = per_vertex[v];
  std::vector<T> out;
  out.reserve(xs.size());
  if (segs.empty()) {
    out.assign(xs.size(), DistTraits<T>::inf());
    return out;
  }
  std::size_t p = 0;
  for (const T& x : xs) {
    while (p + 1 < segs.size() && !DistTraits<T>::less(x, segs[p + 1].from)) ++p;
    out.push_back(lin(segs[p].intercept, segs[p].slope, x));
  }
  return out;
}

template <class T>
EnvelopeStructure<T> build_envelope(const DistKernel<T>& kr, const SourceTable<T>& table) {
  using D = DistTraits<T>;
  const std::size_t n = kr.g->n();
  EnvelopeStructure<T> env;
  env.s = table.s;
  env.k = table.exact.size() - 1;
  env.per_vertex.resize(n);
  std::vector<T> slope;
  slope.reserve(env.k + 1);
  slope.push_back(D::from(Rational(1)));
  for (std::size_t i = 1; i <= env.k; ++i) slope.push_back(D::mul(slope.back(), kr.gamma));
  for (Vertex v = 0; v < n; ++v) {
    auto& segs = env.per_vertex[v];
    segs.reserve(env.k + 1);
    for (std::size_t i = 0; i <= env.k; ++i) {
      const T& a = table.exact[i][v];
      if (D::is_inf(a)) continue;
      T from = D::zero();
      // Slopes only decrease, so the new line owns a right-unbounded piece;
      // drop earlier pieces it covers entirely.
      while (!segs.empty()) {
        from = cross(segs.back().intercept, segs.back().slope, a, slope[i]);
        if (segs.size() > 1 && !D::less(segs.back().from, from)) {
          segs.pop_back();
          continue;
        }
        break;
      }
      segs.push_back({i, a, slope[i], std::move(from)});
    }
  }
  return env;
}

template <class T>
EnvelopeStructure<T> build_envelope(const DistKernel<T>& kr, Vertex s, std::size_t k) {
  return build_envelope(kr, delta_from_source(kr, s, k));
}

std::size_t hitting_set_bound(std::size_t n, std::size_t k, std::size_t q) {
  if (q == 0) return 0;
  double b = (static_cast<double>(n) / static_cast<double>(k + 1)) * (std::log(static_cast<double>(q)) + 1.0);
  return static_cast<std::size_t>(std::ceil(b - 1e-12)) + 1;
}

HittingSet greedy_hitting_set(std::size_t n, std::size_t k, const std::vector<std::vector<Vertex>>& family) {
  HittingSet hs;
  hs.k = k;
  hs.family_size = family.size();
  std::vector<std::size_t> count(n, 0);
  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t p = 0; p < family.size(); ++p)
    for (Vertex v : family[p]) {
      ++count[v];
      containing[v].push_back(p);
    }
  std::vector<char> alive(family.size(), 1);
  for (;;) {
    Vertex best = 0;
    std::size_t best_count = 0;
    for (Vertex v = 0; v < n; ++v)
      if (count[v] > best_count) {
        best_count = count[v];
        best = v;
      }
    if (best_count == 0) break;
    hs.X.push_back(best);
    for (std::size_t p : containing[best]) {
      if (!alive[p]) continue;
      alive[p] = 0;
      for (Vertex w : family[p]) --count[w];
    }
  }
  std::sort(hs.X.begin(), hs.X.end());
  return hs;
}

template <class T>
std::vector<std::vector<Vertex>> simple_prefix_family(const Graph& g, const SourceTable<T>& table, std::size_t k) {
  std::vector<std::vector<Vertex>> family;
  if (table.exact.size() <= k || table.pred.size() <= k) return family;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> vs;
  for (Vertex w = 0; w < g.n(); ++w) {
    if (DistTraits<T>::is_inf(table.exact[k][w])) continue;
    // Trace predecessors back to the source; stop at the first repeat.
    vs.assign(1, w);
    seen[w] = 1;
    bool simple = true;
    Vertex cur = w;
    for (std::size_t j = k; j >= 1 && simple; --j) {
      cur = g.edge(*table.pred[j][cur]).u;
      if (seen[cur]) simple = false;
      seen[cur] = 1;
      vs.push_back(cur);
    }
    for (Vertex v : vs) seen[v] = 0;
    if (!simple) continue;
    std::sort(vs.begin(), vs.end());
    family.push_back(vs);
  }
  return family;
}

template <class T>
HittingSet build_hitting_set(const DistKernel<T>& kr, const std::vector<Vertex>& sources, std::size_t k) {
  std::vector<std::vector<Vertex>> family;
  for (Vertex s : sources) {
    auto part = simple_prefix_family(*kr.g, delta_from_source(kr, s, k, true), k);
    family.insert(family.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return greedy_hitting_set(kr.g->n(), k, family);
}

template <class T>
std::vector<std::vector<T>> reduce_sources_v1(const DistKernel<T>& kr, const std::vector<Vertex>& sources,
                                              const std::vector<Vertex>& targets, std::size_t h,
                                              const SourceRows<T>& from_x, const std::vector<std::vector<T>>& near) {
  using D = DistTraits<T>;
  const Graph& g = *kr.g;
  std::vector<std::vector<T>> out = near;
  std::vector<T> d(g.n()), prev;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    std::fill(d.begin(), d.end(), D::inf());
    for (std::size_t ix = 0; ix < from_x.sources.size(); ++ix) d[from_x.sources[ix]] = from_x.rows[ix][j];
    for (std::size_t r = 0; r < h; ++r) {
      prev = d;
      for (const Edge& e : g.edges()) {
        if (D::is_inf(prev[e.v])) continue;
        T cand = lin(kr.cost[e.id], kr.gamma, prev[e.v]);
        if (D::less(cand, d[e.u])) d[e.u] = std::move(cand);
      }
      counters().edge_relaxations += g.m();
    }
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (D::less(d[sources[i]], out[i][j])) out[i][j] = d[sources[i]];
  }
  return out;
}

template <class T>
std::vector<std::vector<T>> reduce_sources_v2(const std::vector<EnvelopeStructure<T>>& envelopes,
                                              const std::vector<Vertex>& targets, const SourceRows<T>& from_x,
                                              const std::vector<std::vector<T>>& near) {
  using D = DistTraits<T>;
  std::vector<std::vector<T>> out = near;
  std::vector<std::size_t> order;
  std::vector<T> xs;
  for (std::size_t ix = 0; ix < from_x.sources.size(); ++ix) {
    const auto& row = from_x.rows[ix];
    order.clear();
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (!D::is_inf(row[j])) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return D::less(row[a], row[b]); });
    xs.clear();
    for (std::size_t j : order) xs.push_back(row[j]);
    for (std::size_t i = 0; i < envelopes.size(); ++i) {
      std::vector<T> vals = envelopes[i].query(from_x.sources[ix], xs);
      for (std::size_t p = 0; p < order.size(); ++p)
        if (D::less(vals[p], out[i][order[p]])) out[i][order[p]] = std::move(vals[p]);
    }
  }
  return out;
}

std::size_t auto_branching(std::size_t n, std::size_t m) {
  if (m == 0) return 2;
  double d = std::sqrt(static_cast<double>(n)) / std::pow(static_cast<double>(m), 0.25);
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(d)));
}

namespace {

constexpr double kSizeConstant = 3.0;

template <class T>
class Driver {
 public:
  Driver(const DistKernel<T>& kr, std::vector<Vertex> targets, std::size_t d, DapspStats& stats)
      : kr_(kr), targets_(std::move(targets)), d_(d), stats_(stats), N_(kr.g->n()) {}

  std::vector<std::vector<T>> solve(const std::vector<Vertex>& sources, std::size_t stage) {
    stats_.stage_sources.push_back(sources.size());
    const double logn = std::log(static_cast<double>(std::max<std::size_t>(N_, 2)));
    const std::size_t h = stage_length(stage);
    if (static_cast<double>(sources.size()) <= kSizeConstant * logn || h + 1 >= N_) return direct(sources);

    std::vector<SourceTable<T>> tables;
    tables.reserve(sources.size());
    std::vector<std::vector<Vertex>> family;
    std::vector<std::vector<T>> near(sources.size(), std::vector<T>(targets_.size(), DistTraits<T>::inf()));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      tables.push_back(delta_from_source(kr_, sources[i], h, true));
      for (std::size_t j = 0; j < targets_.size(); ++j)
        for (std::size_t l = 0; l <= h; ++l)
          if (DistTraits<T>::less(tables[i].exact[l][targets_[j]], near[i][j])) near[i][j] = tables[i].exact[l][targets_[j]];
      auto part = simple_prefix_family(*kr_.g, tables[i], h);
      family.insert(family.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    HittingSet hs = greedy_hitting_set(N_, h, family);
    const double cap_d = kSizeConstant * (static_cast<double>(N_) / static_cast<double>(h)) * logn;
    const std::size_t cap = std::min<std::size_t>(N_, static_cast<std::size_t>(std::ceil(cap_d)));
    if (hs.X.size() > cap) {
      stats_.cap_fallback = true;
      return direct(sources);
    }
    // No simple exact-h optimal walk: every pair is settled within h edges.
    if (hs.X.empty()) return near;

    SourceRows<T> from_x{hs.X, solve(hs.X, stage + 1)};
    if (stage == 0) return reduce_sources_v1(kr_, sources, targets_, h, from_x, near);
    std::vector<EnvelopeStructure<T>> envs;
    envs.reserve(tables.size());
    for (const auto& tb : tables) envs.push_back(build_envelope(kr_, tb));
    tables.clear();
    return reduce_sources_v2(envs, targets_, from_x, near);
  }

 private:
  // d at stage 0, d^(i+1) at stage i >= 1; saturates at N.
  std::size_t stage_length(std::size_t stage) const {
    std::size_t h = d_;
    for (std::size_t i = 1; i <= stage && h < N_; ++i) h *= d_;
    return std::min(h, N_);
  }

  // Simple paths have at most N - 1 edges.
  std::vector<std::vector<T>> direct(const std::vector<Vertex>& sources) {
    using D = DistTraits<T>;
    const Graph& g = *kr_.g;
    std::vector<std::vector<T>> out(sources.size(), std::vector<T>(targets_.size(), D::inf()));
    std::vector<T> cur(N_), prev(N_), best(N_);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      std::fill(cur.begin(), cur.end(), D::inf());
      cur[sources[i]] = D::zero();
      best = cur;
      T disc = D::from(Rational(1));
      for (std::size_t j = 1; j < N_; ++j) {
        std::swap(prev, cur);
        std::fill(cur.begin(), cur.end(), D::inf());
        bool any = false;
        for (const Edge& e : g.edges()) {
          if (D::is_inf(prev[e.u])) continue;
          T cand = lin(prev[e.u], disc, kr_.cost[e.id]);
          if (D::less(cand, cur[e.v])) {
            cur[e.v] = std::move(cand);
            any = true;
          }
        }
        counters().edge_relaxations += g.m();
        if (!any) break;
        for (Vertex v = 0; v < N_; ++v)
          if (D::less(cur[v], best[v])) best[v] = cur[v];
        disc = D::mul(disc, kr_.gamma);
      }
      for (std::size_t j = 0; j < targets_.size(); ++j) out[i][j] = best[targets_[j]];
    }
    return out;
  }

  const DistKernel<T>& kr_;
  std::vector<Vertex> targets_;
  std::size_t d_;
  DapspStats& stats_;
  std::size_t N_;
};

}  // namespace

template <class T>
DiscountedDistances<T> solve_dapsp(const UniformInstance& inst, const DapspOptions& opt, DapspStats* stats) {
  if (opt.d && *opt.d < 2) throw std::invalid_argument("branching parameter d must be at least 2");
  ReducedInstance r = madani_reduce(inst);
  const Graph& gp = r.reduced.graph;
  DapspStats local;
  DapspStats& st = stats ? *stats : local;
  st = DapspStats{};
  st.d = opt.d ? *opt.d : auto_branching(gp.n(), gp.m());
  st.reduced_n = gp.n();
  DistKernel<T> kr(r.reduced);
  Driver<T> driver(kr, r.targets(), st.d, st);
  std::vector<Vertex> sources(r.n);
  for (Vertex v = 0; v < r.n; ++v) sources[v] = r.source_of(v);
  auto rows = driver.solve(sources, 0);
  DiscountedDistances<T> out(r.n);
  for (Vertex u = 0; u < r.n; ++u)
    for (Vertex v = 0; v < r.n; ++v) out.at(u, v) = std::move(rows[u][v]);
  return out;
}

template <>
DiscountedDistances<ExtRational> naive_dapsp_reduced<ExtRational>(const UniformInstance& inst) {
  ReducedInstance r = madani_reduce(inst);
  ExactDistances full = naive_dapsp(r.reduced.graph, inst.gamma);
  ExactDistances out(r.n);
  for (Vertex u = 0; u < r.n; ++u)
    for (Vertex v = 0; v < r.n; ++v) out.at(u, v) = full.at(r.source_of(u), r.target_of(v));
  return out;
}

template <>
DiscountedDistances<double> naive_dapsp_reduced<double>(const UniformInstance& inst) {
  ReducedInstance r = madani_reduce(inst);
  FloatDistances full = naive_dapsp_float(r.reduced.graph, inst.gamma.get_d());
  FloatDistances out(r.n);
  for (Vertex u = 0; u < r.n; ++u)
    for (Vertex v = 0; v < r.n; ++v) out.at(u, v) = full.at(r.source_of(u), r.target_of(v));
  return out;
}

#define M2VPI_DAPSP_INSTANTIATE(T)                                                                                  \
  template struct DistKernel<T>;                                                                                   \
  template struct SourceTable<T>;                                                                                  \
  template struct EnvelopeStructure<T>;                                                                            \
  template std::vector<std::vector<T>> delta_to_target<T>(const DistKernel<T>&, Vertex, std::size_t);              \
  template SourceTable<T> delta_from_source<T>(const DistKernel<T>&, Vertex, std::size_t, bool);                   \
  template EnvelopeStructure<T> build_envelope<T>(const DistKernel<T>&, const SourceTable<T>&);                    \
  template EnvelopeStructure<T> build_envelope<T>(const DistKernel<T>&, Vertex, std::size_t);                      \
  template std::vector<std::vector<Vertex>> simple_prefix_family<T>(const Graph&, const SourceTable<T>&,           \
                                                                    std::size_t);                                  \
  template HittingSet build_hitting_set<T>(const DistKernel<T>&, const std::vector<Vertex>&, std::size_t);         \
  template std::vector<std::vector<T>> reduce_sources_v1<T>(const DistKernel<T>&, const std::vector<Vertex>&,      \
                                                            const std::vector<Vertex>&, std::size_t,               \
                                                            const SourceRows<T>&,                                  \
                                                            const std::vector<std::vector<T>>&);                   \
  template std::vector<std::vector<T>> reduce_sources_v2<T>(const std::vector<EnvelopeStructure<T>>&,              \
                                                            const std::vector<Vertex>&, const SourceRows<T>&,      \
                                                            const std::vector<std::vector<T>>&);                   \
  template DiscountedDistances<T> solve_dapsp<T>(const UniformInstance&, const DapspOptions&, DapspStats*);

M2VPI_DAPSP_INSTANTIATE(ExtRational)
M2VPI_DAPSP_INSTANTIATE(double)

}  // namespace m2vpi
