#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "m2vpi/bounds.hpp"
#include "m2vpi/certificate.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/kcycle.hpp"

namespace m2vpi {

/// Upper bounds from sampled cycle bounds. A finite value at v equals
/// phi_{v, k[v]}, so the closed walk behind it is re-derived by phi_vk.
struct XStar {
  BoundVector value;
  std::vector<std::size_t> k;  ///< 0 where value is +inf
};

/// (t_j, k_j) for j = 0 .. l with 2^l <= n: t_j = ceil(n / 2^j) (l + 2 - j)^3
/// samples with cap k_j = min(2^{j+1}, n).
std::vector<std::pair<std::uint64_t, std::size_t>> phase_schedule(std::size_t n);

/// phi_vk cache keyed by (v, k). phi_vk is deterministic, so entries are
/// valid across attempts and seeds on the same graph.
using PhiMemo = std::map<std::pair<Vertex, std::size_t>, KCycleResult>;

struct PhaseRun {
  XStar xstar;
  std::optional<Certificate> certificate;
  std::vector<std::uint64_t> samples;  ///< samples drawn per phase
};

/// Runs phases j = 0 .. last (all of them when last is empty).
PhaseRun run_phases(const KCycleContext& ctx, std::mt19937_64& rng, PhiMemo* memo,
                    std::optional<std::size_t> last = std::nullopt);

struct YStar {
  BoundVector value;
  std::vector<std::optional<Vertex>> endpoint;  ///< w_v with y*_v = c(P) + g(P) x*_{w_v}, |P| <= steps
  std::size_t steps = 0;
};

/// `steps` synchronous propagation steps from x* (3n when unset), tracking
/// one minimizing endpoint.
YStar compute_ystar(const Graph& g, const BoundVector& xstar, std::optional<std::size_t> steps = std::nullopt);

/// Analysis of the vertices U with x_v = +inf, over edges inside U.
struct UnboundedCheck {
  std::optional<Vertex> gain_below_one;  ///< a vertex of U reaching a cycle with gain < 1 inside U
  std::optional<Walk> neg_unit_gain;     ///< a negative unit-gain cycle inside U
};

/// Without cycles of gain < 1 in U, scales U to gains >= 1; unit-gain cycles
/// then use only edges of scaled gain exactly 1, and Bellman-Ford finds a
/// negative one when it exists.
UnboundedCheck check_unbounded(const Graph& g, const BoundVector& x);

struct Verification {
  enum class Kind { Verified, NotMaximal, Infeasible };
  Kind kind = Kind::Verified;
  std::optional<Vertex> evidence;   ///< a vertex that can be raised
  std::optional<EdgeId> violated;   ///< smallest violated edge
  std::optional<Walk> neg_unit_gain;  ///< set with Infeasible when found among +inf entries
};

/// Checks feasibility, one-step slack, and that every finite vertex reaches a
/// tight closed walk with gain < 1 over tight edges. The last condition
/// holds exactly when x equals x^max at that vertex. +inf entries are
/// accepted only when check_unbounded finds neither a gain < 1 cycle nor a
/// negative unit-gain cycle among them.
Verification verify_solution(const Graph& g, const BoundVector& x);

class NoWitnessVertex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One side of certificate assembly: a graph, its k-cycle context, and the
/// phase and propagation results on it.
struct SideResult {
  const KCycleContext* ctx;
  XStar xstar;
  YStar ystar;
};

/// Bicycle from a vertex g with y*_g < -y^R_g, where `reverse` lives on
/// reverse_instance(g). Walks S_g are rebuilt with the step budgets of the
/// two YStar values. Throws NoWitnessVertex when there is none.
Certificate assemble_infeasibility_certificate(const Graph& g, const SideResult& forward, const SideResult& reverse);

/// A certificate on reverse_instance(g) read as one on g.
Certificate unreverse_certificate(const Graph& g, const Certificate& rc);

struct SolveOptions {
  std::uint64_t seed = 0;
  PhiMemo* shared_memo = nullptr;  ///< reused across calls when set
  std::size_t max_attempts = 100000;
};

struct SolveStats {
  std::size_t attempts = 0;
  std::vector<std::uint64_t> first_attempt_samples;
};

struct SolveOutcome {
  enum class Kind { Feasible, Infeasible };
  Kind kind = Kind::Feasible;
  BoundVector x;                         ///< x^max when feasible
  std::optional<Certificate> certificate;  ///< always set by solve_simple when infeasible
  SolveStats stats;
};

/// Las Vegas solver: phases, y*, verification, rerun on failure. Every
/// returned outcome has been verified.
SolveOutcome solve_simple(const Graph& g, const SolveOptions& opt);
SolveOutcome solve_simple(const Graph& g, std::uint64_t seed);

/// Seed for attempt `attempt` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt);

class NoTightEdge : public std::runtime_error {
 public:
  explicit NoTightEdge(Vertex v) : std::runtime_error("no tight out-edge at a vertex"), v_(v) {}
  Vertex vertex() const { return v_; }

 private:
  Vertex v_;
};

/// Smallest-id tight out-edge per vertex.
std::vector<EdgeId> dmdp_policy(const Graph& g, const BoundVector& xmax);

}  // namespace m2vpi
