#pragma once

#include <stdexcept>

#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

/// No walk from s to t with at most k edges exists.
class NoWalk : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A walk Q from s to t with at most k edges whose pair
/// (c(Q) + g(Q) alpha, g(Q)) is lexicographically minimal. Ties between
/// midpoints go to the smallest vertex, ties between parallel edges to the
/// smallest id. The empty walk is returned when s = t and it is optimal.
/// Auxiliary memory is O(n + k) cells, reported through ScratchCells.
Walk reconstruct_walk(const Graph& g, Vertex s, Vertex t, std::size_t k, const Rational& alpha);

}  // namespace m2vpi
