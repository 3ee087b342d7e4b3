#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "m2vpi/graph.hpp"
#include "m2vpi/rational.hpp"

namespace m2vpi {

/// (c(P), g(P), |P|). The empty walk is (0, 1, 0).
struct WalkSummary {
  Rational cost{0};
  Rational gain{1};
  std::size_t length = 0;

  static WalkSummary of_edge(const Edge& e) { return WalkSummary{e.c, e.g, 1}; }
  friend bool operator==(const WalkSummary&, const WalkSummary&) = default;
};

/// Summary of a followed by b: cost a.c + a.g * b.c, gain a.g * b.g.
WalkSummary compose(const WalkSummary& a, const WalkSummary& b);

/// Thrown by cycle_bound on a closed walk with gain 1 and negative cost.
class NegativeUnitGain : public std::runtime_error {
 public:
  explicit NegativeUnitGain(WalkSummary s)
      : std::runtime_error("negative unit-gain closed walk"), summary_(std::move(s)) {}
  const WalkSummary& summary() const { return summary_; }

 private:
  WalkSummary summary_;
};

/// c / (1 - g); +inf when g = 1 and c >= 0. Requires length >= 1.
ExtRational cycle_bound(const WalkSummary& c);

/// Edge sequence from `from` to `to`. An empty walk still has an endpoint.
struct Walk {
  Vertex from = 0;
  Vertex to = 0;
  std::vector<EdgeId> edges;
  WalkSummary summary;

  static Walk empty_at(Vertex v) { return Walk{v, v, {}, {}}; }
  bool closed() const { return from == to; }
  std::size_t length() const { return edges.size(); }
};

/// Builds a walk from edge ids, checking that consecutive edges chain.
/// Throws std::invalid_argument on a broken chain or an empty id list.
Walk make_walk(const Graph& g, const std::vector<EdgeId>& edges);

/// Concatenation; a.to must equal b.from.
Walk concat(const Graph& g, const Walk& a, const Walk& b);

/// True iff every id is a valid edge, edges chain, endpoints match and the
/// cached summary equals the recomputed one.
bool validate_walk(const Graph& g, const Walk& w);

/// Recomputes the summary from the edge list.
WalkSummary summarize(const Graph& g, const std::vector<EdgeId>& edges);

/// Closed walk re-rooted to start at position `pos` of its edge list.
Walk rotate_closed(const Graph& g, const Walk& w, std::size_t pos);

/// A walk in reverse_instance(g) read backwards as a walk in g.
Walk unreverse_walk(const Graph& g, const Walk& wr);

/// phi(C) as an ExtRational for a closed walk, never throwing: a negative
/// unit-gain walk maps to -inf.
ExtRational cycle_bound_or_neg_inf(const WalkSummary& c);

}  // namespace m2vpi
