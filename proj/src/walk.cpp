#include "m2vpi/walk.hpp"

#include <algorithm>

namespace m2vpi {

WalkSummary compose(const WalkSummary& a, const WalkSummary& b) {
  return WalkSummary{Rational(a.cost + a.gain * b.cost), Rational(a.gain * b.gain), a.length + b.length};
}

ExtRational cycle_bound(const WalkSummary& c) {
  if (c.length == 0) throw std::invalid_argument("cycle_bound of an empty walk");
  if (c.gain == 1) {
    if (sgn(c.cost) < 0) throw NegativeUnitGain(c);
    return ExtRational::pos_inf();
  }
  return ExtRational(Rational(c.cost / (1 - c.gain)));
}

ExtRational cycle_bound_or_neg_inf(const WalkSummary& c) {
  if (c.gain == 1) return sgn(c.cost) < 0 ? ExtRational::neg_inf() : ExtRational::pos_inf();
  return ExtRational(Rational(c.cost / (1 - c.gain)));
}

WalkSummary summarize(const Graph& g, const std::vector<EdgeId>& edges) {
  // Right-to-left keeps the accumulation a single multiply-add per edge.
  WalkSummary s;
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    const Edge& e = g.edge(*it);
    s.cost = e.c + e.g * s.cost;
    s.gain *= e.g;
  }
  s.length = edges.size();
  return s;
}

Walk make_walk(const Graph& g, const std::vector<EdgeId>& edges) {
  if (edges.empty()) throw std::invalid_argument("make_walk needs at least one edge");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] >= g.m()) throw std::invalid_argument("edge id out of range");
    if (i > 0 && g.edge(edges[i - 1]).v != g.edge(edges[i]).u) throw std::invalid_argument("edges do not chain");
  }
  return Walk{g.edge(edges.front()).u, g.edge(edges.back()).v, edges, summarize(g, edges)};
}

Walk concat(const Graph& /*g*/, const Walk& a, const Walk& b) {
  if (a.to != b.from) throw std::invalid_argument("concat: endpoints do not meet");
  Walk w{a.from, b.to, a.edges, compose(a.summary, b.summary)};
  w.edges.insert(w.edges.end(), b.edges.begin(), b.edges.end());
  return w;
}

bool validate_walk(const Graph& g, const Walk& w) {
  if (w.from >= g.n() || w.to >= g.n()) return false;
  Vertex at = w.from;
  for (EdgeId id : w.edges) {
    if (id >= g.m()) return false;
    const Edge& e = g.edge(id);
    if (e.u != at) return false;
    at = e.v;
  }
  if (at != w.to) return false;
  return w.summary == summarize(g, w.edges);
}

Walk rotate_closed(const Graph& g, const Walk& w, std::size_t pos) {
  if (!w.closed()) throw std::invalid_argument("rotate_closed on an open walk");
  if (w.edges.empty()) return w;
  std::vector<EdgeId> es(w.edges.begin() + static_cast<std::ptrdiff_t>(pos), w.edges.end());
  es.insert(es.end(), w.edges.begin(), w.edges.begin() + static_cast<std::ptrdiff_t>(pos));
  return make_walk(g, es);
}

Walk unreverse_walk(const Graph& g, const Walk& wr) {
  if (wr.edges.empty()) return Walk::empty_at(wr.from);
  std::vector<EdgeId> es(wr.edges.rbegin(), wr.edges.rend());
  return make_walk(g, es);
}

}  // namespace m2vpi
