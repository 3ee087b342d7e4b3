#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "m2vpi/bounds.hpp"
#include "m2vpi/distances.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

class SizeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShostakWitness {
  Walk path;   ///< simple path v -> w, possibly empty
  Walk cycle;  ///< simple cycle rooted at w with gain < 1
};

struct ShostakResult {
  BoundVector x_le;                                   ///< tightest upper bounds, +inf if none
  BoundVector x_ge;                                   ///< tightest lower bounds, -inf if none
  std::vector<std::optional<ShostakWitness>> witness;  ///< realizes x_le where finite
  std::optional<Walk> neg_unit_gain_cycle;            ///< a simple cycle with gain 1, cost < 0
  bool feasible = true;
};

/// Exhaustive evaluation of the simple path / simple cycle formulas for the
/// pointwise maximal and minimal solutions. Throws SizeLimitExceeded when
/// n > max_n or m > 2 n^2.
ShostakResult shostak_enumerate(const Graph& g, std::size_t max_n = 8);

/// Calls visit(path) for every simple path starting at s, including the
/// empty one. Paths are built incrementally; the reference is only valid
/// during the call.
void for_each_simple_path(const Graph& g, Vertex s, const std::function<void(const Walk&)>& visit);

/// Calls visit(cycle) for every simple cycle rooted at s.
void for_each_simple_cycle(const Graph& g, Vertex s, const std::function<void(const Walk&)>& visit);

/// Calls visit(walk) for every walk starting at s with at most k edges,
/// including the empty one.
void for_each_walk(const Graph& g, Vertex s, std::size_t k, const std::function<void(const Walk&)>& visit);

/// For every target t, the recursion d_j(s) = min(d_{j-1}(s), c(su) +
/// gamma d_{j-1}(u)) with d_0 = [s == t], run for n rounds. Edge gains of `g`
/// are ignored; `gamma` is used throughout.
ExactDistances naive_dapsp(const Graph& g, const Rational& gamma);
FloatDistances naive_dapsp_float(const Graph& g, double gamma);

}  // namespace m2vpi
