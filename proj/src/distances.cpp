#include "m2vpi/distances.hpp"

#include <set>

namespace m2vpi {

UniformInstance make_uniform(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Rational>>& edges,
                             const Rational& gamma) {
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("discount must lie in (0, 1)");
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::tuple<Vertex, Vertex, Rational, Rational>> es;
  es.reserve(edges.size());
  for (const auto& [u, v, c] : edges) {
    if (!seen.insert({u, v}).second) throw std::invalid_argument("uniform instances must be simple");
    es.emplace_back(u, v, c, gamma);
  }
  return UniformInstance{make_graph(n, es), gamma};
}

}  // namespace m2vpi
