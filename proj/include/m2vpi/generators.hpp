#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "m2vpi/distances.hpp"
#include "m2vpi/graph.hpp"

namespace m2vpi {

/// Arbitrary monotone instance: endpoints uniform (self-loops allowed), cost
/// p/q with |p| <= bound and gain p/q with 1 <= p, q <= bound. May be
/// infeasible.
Graph gen_random(std::size_t n, std::size_t m, std::uint64_t seed, int bound = 8);

/// Feasible by construction: a point x is drawn first and every edge keeps
/// x_u <= c + g x_v, often tightly. The point is stored in `point` if given.
Graph gen_feasible_random(std::size_t n, std::size_t m, std::uint64_t seed, std::vector<Rational>* point = nullptr);

/// Feasible instance whose maximal solution is pinned by a single cycle with
/// gain < 1 on `cycle_len` vertices. Every other vertex has one tight edge
/// into an earlier vertex; all remaining edges have slack at least 1.
/// Vertices 0 .. cycle_len - 1 in order form the cycle.
Graph gen_planted_long_cycle(std::size_t n, std::size_t m, std::size_t cycle_len, std::uint64_t seed);

/// Feasible random instance plus a planted contradiction: a negative unit-gain
/// cycle or a negative bicycle, chosen by the seed.
Graph gen_infeasible_bicycle(std::size_t n, std::size_t m, std::uint64_t seed);

/// DMDP: every gain in (0, 1) and every vertex has an out-edge.
Graph gen_dmdp_random(std::size_t n, std::size_t m, std::uint64_t seed);

/// Simple digraph with integer costs in [-cost_bound, cost_bound] and a
/// uniform discount. Self-loops are allowed, parallel edges are not.
UniformInstance gen_dapsp_random(std::size_t n, std::size_t m, const Rational& gamma, std::uint64_t seed,
                                 int cost_bound = 8);

/// Dispatch by CLI kind name. Throws std::invalid_argument on an unknown
/// kind or bad parameters.
Graph generate(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace m2vpi
