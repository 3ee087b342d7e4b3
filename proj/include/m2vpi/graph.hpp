#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "m2vpi/rational.hpp"

namespace m2vpi {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Constraint x_u <= c + g * x_v. The id is the position in input order and
/// serves as the fixed total order on edges.
struct Edge {
  EdgeId id;
  Vertex u;
  Vertex v;
  Rational c;
  Rational g;
};

enum class InstanceKind { M2vpi, Dmdp };

class Graph {
 public:
  Graph() = default;
  /// Edge ids are reassigned to match positions. Throws std::invalid_argument
  /// on out-of-range endpoints, g <= 0, or g >= 1 in DMDP mode.
  Graph(std::size_t n, std::vector<Edge> edges, InstanceKind kind = InstanceKind::M2vpi);

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  InstanceKind kind() const { return kind_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& out_edges(Vertex u) const { return out_[u]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_ = 0;
  InstanceKind kind_ = InstanceKind::M2vpi;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Convenience builder taking (u, v, c, g) with 0-indexed endpoints.
Graph make_graph(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Rational, Rational>>& edges,
                 InstanceKind kind = InstanceKind::M2vpi);

/// Edge uv becomes vu with cost c/g and gain 1/g, same id. A point x satisfies
/// the original system iff -x satisfies the reverse one, so the pointwise
/// minimal solution of g is the negated pointwise maximal one of the reverse.
Graph reverse_instance(const Graph& g);

/// Same edges with every cost set to zero.
Graph zero_cost_instance(const Graph& g);

/// Same edges with cost zero and gain 1/g.
Graph reciprocal_gain_instance(const Graph& g);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the text instance format: a header `m2vpi <n> <m>` or `dmdp <n> <m>`
/// followed by m lines `<u> <v> <c> <g>` with 1-indexed vertices. Text after
/// '#' is ignored.
Graph parse_instance(std::istream& in);
Graph parse_instance_string(const std::string& text);
std::string print_instance(const Graph& g);

}  // namespace m2vpi
