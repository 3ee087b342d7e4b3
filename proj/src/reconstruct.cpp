#include "m2vpi/reconstruct.hpp"

#include "m2vpi/bounds.hpp"
#include "m2vpi/counters.hpp"

namespace m2vpi {

namespace {

// Forward state: lex-max of ((beta - c(P)) / g(P), 1 / g(P)) over walks P
// from s. `reached` is false for the -inf sentinel.
struct Forward {
  bool reached = false;
  Rational need;
  Rational inv_gain;
};

std::vector<Forward> forward_from(const Graph& g, Vertex s, const Rational& beta, std::size_t steps) {
  const std::size_t n = g.n();
  std::vector<Forward> l(n);
  l[s] = Forward{true, beta, Rational(1)};
  // prev mirrors l at the start of a step; only out-edges of entries changed
  // in the previous step can improve.
  std::vector<Forward> prev = l;
  ScratchCells prev_cells(2 * n);
  std::vector<Vertex> active{s}, touched;
  std::vector<char> mark(n, 0);
  Rational need, inv;
  for (std::size_t i = 0; i < steps && !active.empty(); ++i) {
    touched.clear();
    std::uint64_t relaxed = 0;
    for (Vertex u : active) {
      const Forward& pu = prev[u];
      for (EdgeId id : g.out_edges(u)) {
        const Edge& e = g.edge(id);
        ++relaxed;
        mpq_sub(need.get_mpq_t(), pu.need.get_mpq_t(), e.c.get_mpq_t());
        mpq_div(need.get_mpq_t(), need.get_mpq_t(), e.g.get_mpq_t());
        Forward& lv = l[e.v];
        if (lv.reached) {
          int c = mpq_cmp(need.get_mpq_t(), lv.need.get_mpq_t());
          if (c < 0) continue;
          mpq_div(inv.get_mpq_t(), pu.inv_gain.get_mpq_t(), e.g.get_mpq_t());
          if (c == 0 && mpq_cmp(inv.get_mpq_t(), lv.inv_gain.get_mpq_t()) <= 0) continue;
        } else {
          mpq_div(inv.get_mpq_t(), pu.inv_gain.get_mpq_t(), e.g.get_mpq_t());
        }
        lv.reached = true;
        mpq_swap(lv.need.get_mpq_t(), need.get_mpq_t());
        mpq_swap(lv.inv_gain.get_mpq_t(), inv.get_mpq_t());
        if (!mark[e.v]) {
          mark[e.v] = 1;
          touched.push_back(e.v);
        }
      }
    }
    counters().edge_relaxations += relaxed;
    for (Vertex v : touched) {
      mark[v] = 0;
      prev[v] = l[v];
    }
    active.swap(touched);
  }
  return l;
}

// Walk for a pair (beta, gamma) already known to be the optimum.
Walk rec(const Graph& g, Vertex s, Vertex t, std::size_t k, const Rational& alpha, const Rational& beta,
         const Rational& gamma) {
  ++counters().reconstruct_calls;
  if (s == t && beta == alpha && gamma == 1) return Walk::empty_at(s);
  if (k == 1) {
    for (EdgeId id : g.out_edges(s)) {
      const Edge& e = g.edge(id);
      if (e.v == t && e.g == gamma && e.c + e.g * alpha == beta) return make_walk(g, {id});
    }
    throw std::logic_error("reconstruct_walk: no edge realizes the optimum");
  }
  const std::size_t k1 = (k + 1) / 2;
  const std::size_t k2 = k - k1;

  Vertex mid = 0;
  Rational mid_alpha, q1_gain, q2_beta, q2_gain;
  {
    const std::size_t n = g.n();
    ScratchCells arrays(4 * n);
    std::vector<Forward> l = forward_from(g, s, beta, k1);
    std::vector<LexPair> r;
    {
      ScratchCells prop(2 * n);
      r = lex_propagate_to(g, t, alpha, k2);
    }
    bool found = false;
    for (Vertex x = 0; x < n && !found; ++x) {
      if (!l[x].reached || !r[x].value.is_finite()) continue;
      if (l[x].need != r[x].value.value()) continue;
      if (r[x].gain / l[x].inv_gain != gamma) continue;
      mid = x;
      mid_alpha = l[x].need;
      q1_gain = 1 / l[x].inv_gain;
      q2_beta = r[x].value.value();
      q2_gain = r[x].gain;
      found = true;
    }
    if (!found) throw std::logic_error("reconstruct_walk: no midpoint");
  }
  Walk q2 = rec(g, mid, t, k2, alpha, q2_beta, q2_gain);
  ScratchCells held(q2.length());
  Walk q1 = rec(g, s, mid, k1, mid_alpha, beta, q1_gain);
  return concat(g, q1, q2);
}

}  // namespace

Walk reconstruct_walk(const Graph& g, Vertex s, Vertex t, std::size_t k, const Rational& alpha) {
  if (s >= g.n() || t >= g.n()) throw std::invalid_argument("reconstruct_walk: vertex out of range");
  LexPair best;
  {
    ScratchCells prop(4 * g.n());
    best = lex_propagate_to(g, t, alpha, k)[s];
  }
  if (!best.value.is_finite()) throw NoWalk("no walk with at most k edges");
  if (k == 0) return Walk::empty_at(s);
  return rec(g, s, t, k, alpha, best.value.value(), best.gain);
}

}  // namespace m2vpi
