#include "m2vpi/oracle.hpp"

#include <string>

namespace m2vpi {

namespace {

struct PathDfs {
  const Graph& g;
  const std::function<void(const Walk&)>& visit;
  std::vector<char> on_path;
  std::vector<WalkSummary> prefix;  // prefix[i] summarizes the first i edges
  Walk walk;

  void extend(const Edge& e) {
    const WalkSummary& p = prefix.back();
    prefix.push_back(WalkSummary{Rational(p.cost + p.gain * e.c), Rational(p.gain * e.g), p.length + 1});
    walk.edges.push_back(e.id);
    walk.to = e.v;
    walk.summary = prefix.back();
  }
  void retract(Vertex back_to) {
    prefix.pop_back();
    walk.edges.pop_back();
    walk.to = back_to;
    walk.summary = prefix.back();
  }
};

void dfs_paths(PathDfs& st, Vertex u) {
  st.visit(st.walk);
  for (EdgeId id : st.g.out_edges(u)) {
    const Edge& e = st.g.edge(id);
    if (st.on_path[e.v]) continue;
    st.on_path[e.v] = 1;
    st.extend(e);
    dfs_paths(st, e.v);
    st.retract(u);
    st.on_path[e.v] = 0;
  }
}

void dfs_cycles(PathDfs& st, Vertex root, Vertex u) {
  for (EdgeId id : st.g.out_edges(u)) {
    const Edge& e = st.g.edge(id);
    if (e.v == root) {
      st.extend(e);
      st.visit(st.walk);
      st.retract(u);
      continue;
    }
    if (st.on_path[e.v]) continue;
    st.on_path[e.v] = 1;
    st.extend(e);
    dfs_cycles(st, root, e.v);
    st.retract(u);
    st.on_path[e.v] = 0;
  }
}

void dfs_walks(PathDfs& st, Vertex u, std::size_t left) {
  st.visit(st.walk);
  if (left == 0) return;
  for (EdgeId id : st.g.out_edges(u)) {
    const Edge& e = st.g.edge(id);
    st.extend(e);
    dfs_walks(st, e.v, left - 1);
    st.retract(u);
  }
}

PathDfs start(const Graph& g, Vertex s, const std::function<void(const Walk&)>& visit) {
  PathDfs st{g, visit, std::vector<char>(g.n(), 0), {WalkSummary{}}, Walk::empty_at(s)};
  st.on_path[s] = 1;
  return st;
}

ExactDistances naive_exact_impl(const Graph& g, const Rational& gamma) {
  const std::size_t n = g.n();
  ExactDistances out(n);
  std::vector<ExtRational> d(n), prev;
  for (Vertex t = 0; t < n; ++t) {
    std::fill(d.begin(), d.end(), ExtRational::pos_inf());
    d[t] = ExtRational(0);
    for (std::size_t j = 0; j < n; ++j) {
      prev = d;
      bool changed = false;
      for (const Edge& e : g.edges()) {
        if (!prev[e.v].is_finite()) continue;
        ExtRational cand(Rational(e.c + gamma * prev[e.v].value()));
        if (cand < d[e.u]) {
          d[e.u] = std::move(cand);
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (Vertex s = 0; s < n; ++s) out.at(s, t) = d[s];
  }
  return out;
}

}  // namespace

void for_each_simple_path(const Graph& g, Vertex s, const std::function<void(const Walk&)>& visit) {
  PathDfs st = start(g, s, visit);
  dfs_paths(st, s);
}

void for_each_simple_cycle(const Graph& g, Vertex s, const std::function<void(const Walk&)>& visit) {
  PathDfs st = start(g, s, visit);
  dfs_cycles(st, s, s);
}

void for_each_walk(const Graph& g, Vertex s, std::size_t k, const std::function<void(const Walk&)>& visit) {
  PathDfs st = start(g, s, visit);
  dfs_walks(st, s, k);
}

ShostakResult shostak_enumerate(const Graph& g, std::size_t max_n) {
  const std::size_t n = g.n();
  if (n > max_n) throw SizeLimitExceeded("shostak_enumerate: n = " + std::to_string(n) + " exceeds the limit");
  if (g.m() > 2 * n * n) throw SizeLimitExceeded("shostak_enumerate: m exceeds 2 n^2");

  ShostakResult r;
  r.x_le.assign(n, ExtRational::pos_inf());
  r.x_ge.assign(n, ExtRational::neg_inf());
  r.witness.assign(n, std::nullopt);

  // kappa[w]: smallest upper cycle bound at w, lambda[w]: largest lower one.
  BoundVector kappa(n, ExtRational::pos_inf()), lambda(n, ExtRational::neg_inf());
  std::vector<std::optional<Walk>> kappa_cycle(n);
  for (Vertex w = 0; w < n; ++w) {
    for_each_simple_cycle(g, w, [&](const Walk& c) {
      const WalkSummary& s = c.summary;
      if (s.gain == 1) {
        if (sgn(s.cost) < 0 && !r.neg_unit_gain_cycle) r.neg_unit_gain_cycle = c;
        return;
      }
      ExtRational phi(Rational(s.cost / (1 - s.gain)));
      if (s.gain < 1) {
        if (phi < kappa[w]) {
          kappa[w] = phi;
          kappa_cycle[w] = c;
        }
      } else if (phi > lambda[w]) {
        lambda[w] = phi;
      }
    });
  }

  for (Vertex v = 0; v < n; ++v) {
    for_each_simple_path(g, v, [&](const Walk& p) {
      const Vertex w = p.to;
      if (kappa[w].is_finite()) {
        ExtRational val(Rational(p.summary.cost + p.summary.gain * kappa[w].value()));
        if (val < r.x_le[v]) {
          r.x_le[v] = val;
          r.witness[v] = ShostakWitness{p, *kappa_cycle[w]};
        }
      }
      // Path v -> w read the other way round bounds x_w from below.
      if (lambda[v].is_finite()) {
        ExtRational val(Rational((lambda[v].value() - p.summary.cost) / p.summary.gain));
        if (val > r.x_ge[w]) r.x_ge[w] = val;
      }
    });
  }

  r.feasible = !r.neg_unit_gain_cycle.has_value();
  for (Vertex v = 0; v < n && r.feasible; ++v) {
    if (r.x_le[v] < r.x_ge[v]) r.feasible = false;
  }
  return r;
}

ExactDistances naive_dapsp(const Graph& g, const Rational& gamma) { return naive_exact_impl(g, gamma); }

FloatDistances naive_dapsp_float(const Graph& g, double gamma) {
  const std::size_t n = g.n();
  FloatDistances out(n);
  const double inf = DistTraits<double>::inf();
  std::vector<double> cost(g.m());
  for (const Edge& e : g.edges()) cost[e.id] = e.c.get_d();
  std::vector<double> d(n), prev;
  for (Vertex t = 0; t < n; ++t) {
    std::fill(d.begin(), d.end(), inf);
    d[t] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      prev = d;
      bool changed = false;
      for (const Edge& e : g.edges()) {
        if (prev[e.v] == inf) continue;
        double cand = cost[e.id] + gamma * prev[e.v];
        if (cand < d[e.u]) {
          d[e.u] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (Vertex s = 0; s < n; ++s) out.at(s, t) = d[s];
  }
  return out;
}

}  // namespace m2vpi
