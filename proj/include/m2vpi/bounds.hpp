#pragma once

#include <optional>
#include <vector>

#include "m2vpi/graph.hpp"
#include "m2vpi/rational.hpp"

namespace m2vpi {

/// Per-vertex upper bounds, length n.
using BoundVector = std::vector<ExtRational>;

/// k synchronous steps of y_u = min(y_u, c(e) + g(e) * y'_v) over all edges
/// uv, where y' is the vector at the start of the step.
BoundVector propagate(const Graph& g, const BoundVector& bounds, std::size_t steps);

/// Outcome of checking x against every inequality.
struct Evaluation {
  bool feasible = true;
  std::optional<EdgeId> violated;  ///< smallest violated edge id
};

/// Exact check of x_u <= c(e) + g(e) x_v for every edge. Infinite entries are
/// accepted: +inf on the left needs +inf on the right.
Evaluation evaluate_solution(const Graph& g, const BoundVector& x);

/// A lexicographic (value, gain) pair. Unset means +inf.
struct LexPair {
  ExtRational value = ExtRational::pos_inf();
  Rational gain{1};
};

/// True iff a is lexicographically smaller than b.
inline bool lex_less(const LexPair& a, const LexPair& b) {
  if (a.value != b.value) return a.value < b.value;
  if (!a.value.is_finite()) return false;
  return a.gain < b.gain;
}

/// Lexicographic propagation towards `target`: after `steps` steps entry w is
/// the lex-min of (c(P) + g(P) alpha, g(P)) over walks P from w to target
/// with at most `steps` edges, or +inf when none exists.
std::vector<LexPair> lex_propagate_to(const Graph& g, Vertex target, const Rational& alpha, std::size_t steps);

}  // namespace m2vpi
