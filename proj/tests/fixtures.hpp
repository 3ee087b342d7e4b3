#pragma once

#include <random>

#include "m2vpi/graph.hpp"

namespace fixtures {

using m2vpi::Graph;
using m2vpi::Rational;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Two vertices, e1 = 1 -> 2 and e2 = 2 -> 1, both c = 1, g = 1/2.
inline Graph instance_a() { return m2vpi::make_graph(2, {{0, 1, q(1), q(1, 2)}, {1, 0, q(1), q(1, 2)}}); }

// One vertex with self-loops (0, 1/2) and (-1, 2): infeasible.
inline Graph two_loops() { return m2vpi::make_graph(1, {{0, 0, q(0), q(1, 2)}, {0, 0, q(-1), q(2)}}); }

// Two-cycle with unit gain and negative cost.
inline Graph neg_unit_cycle() { return m2vpi::make_graph(2, {{0, 1, q(-1), q(2)}, {1, 0, q(0), q(1, 2)}}); }

inline Graph self_loop(long c, long gn, long gd) { return m2vpi::make_graph(1, {{0, 0, q(c), q(gn, gd)}}); }

inline Rational rand_q(std::mt19937_64& rng, long lo, long hi, long den) {
  return q(std::uniform_int_distribution<long>(lo, hi)(rng), std::uniform_int_distribution<long>(1, den)(rng));
}

}  // namespace fixtures
