#include "m2vpi/bounds.hpp"

#include "m2vpi/counters.hpp"

namespace m2vpi {

WorkCounters& counters() {
  thread_local WorkCounters c;
  return c;
}

void reset_counters() { counters() = WorkCounters{}; }

BoundVector propagate(const Graph& g, const BoundVector& bounds, std::size_t steps) {
  if (bounds.size() != g.n()) throw std::invalid_argument("bound vector length differs from n");
  const std::size_t n = g.n();
  BoundVector y = bounds;
  BoundVector prev = y;
  // Only in-edges of entries that changed in the previous step can improve.
  std::vector<Vertex> active, touched;
  for (Vertex v = 0; v < n; ++v)
    if (!y[v].is_pos_inf()) active.push_back(v);
  std::vector<char> mark(n, 0);
  for (std::size_t s = 0; s < steps && !active.empty(); ++s) {
    touched.clear();
    std::uint64_t relaxed = 0;
    for (Vertex v : active) {
      for (EdgeId id : g.in_edges(v)) {
        const Edge& e = g.edge(id);
        ++relaxed;
        ExtRational cand = affine(e.c, e.g, prev[v]);
        if (cand < y[e.u]) {
          y[e.u] = std::move(cand);
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
      prev[u] = y[u];
    }
    active.swap(touched);
  }
  return y;
}

Evaluation evaluate_solution(const Graph& g, const BoundVector& x) {
  if (x.size() != g.n()) throw std::invalid_argument("solution length differs from n");
  for (const Edge& e : g.edges()) {
    if (affine(e.c, e.g, x[e.v]) < x[e.u]) return Evaluation{false, e.id};
  }
  return Evaluation{};
}

std::vector<LexPair> lex_propagate_to(const Graph& g, Vertex target, const Rational& alpha, std::size_t steps) {
  const std::size_t n = g.n();
  std::vector<LexPair> y(n);
  y[target] = LexPair{ExtRational(alpha), Rational(1)};
  // prev mirrors y as of the start of the step. Only in-edges of vertices
  // changed in the previous step can improve anything.
  std::vector<LexPair> prev = y;
  std::vector<Vertex> active{target}, touched;
  std::vector<char> mark(n, 0);
  Rational val, gain;
  for (std::size_t s = 0; s < steps && !active.empty(); ++s) {
    touched.clear();
    std::uint64_t relaxed = 0;
    for (Vertex v : active) {
      const LexPair& pv = prev[v];
      for (EdgeId id : g.in_edges(v)) {
        const Edge& e = g.edge(id);
        ++relaxed;
        mpq_mul(val.get_mpq_t(), e.g.get_mpq_t(), pv.value.value().get_mpq_t());
        mpq_add(val.get_mpq_t(), val.get_mpq_t(), e.c.get_mpq_t());
        LexPair& yu = y[e.u];
        if (yu.value.is_finite()) {
          int c = mpq_cmp(val.get_mpq_t(), yu.value.value().get_mpq_t());
          if (c > 0) continue;
          mpq_mul(gain.get_mpq_t(), e.g.get_mpq_t(), pv.gain.get_mpq_t());
          if (c == 0 && mpq_cmp(gain.get_mpq_t(), yu.gain.get_mpq_t()) >= 0) continue;
        } else {
          mpq_mul(gain.get_mpq_t(), e.g.get_mpq_t(), pv.gain.get_mpq_t());
        }
        yu.value.set_finite(val);
        mpq_swap(yu.gain.get_mpq_t(), gain.get_mpq_t());
        if (!mark[e.u]) {
          mark[e.u] = 1;
          touched.push_back(e.u);
        }
      }
    }
    counters().edge_relaxations += relaxed;
    for (Vertex u : touched) {
      mark[u] = 0;
      prev[u] = y[u];
    }
    active.swap(touched);
  }
  return y;
}

}  // namespace m2vpi
