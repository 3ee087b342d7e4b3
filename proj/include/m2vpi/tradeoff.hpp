#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "m2vpi/certificate.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/locate.hpp"
#include "m2vpi/solver.hpp"

namespace m2vpi {

/// Decides x^max_t < xi. Seam for a batched locator; the default runs
/// locate_value once per query.
using ValueLocator = std::function<ValueLocateOutcome(const Graph&, Vertex, const Rational&)>;

/// A location call exposed infeasibility.
class InfeasibleDetected : public std::runtime_error {
 public:
  explicit InfeasibleDetected(std::optional<Certificate> c)
      : std::runtime_error("infeasibility detected during compression"), certificate_(std::move(c)) {}
  const std::optional<Certificate>& certificate() const { return certificate_; }

 private:
  std::optional<Certificate> certificate_;
};

/// Dense instance on a sampled vertex set S. Edge st of `graph` has the
/// summary of an s -> t walk of G with at most h edges that minimizes
/// c + g x^max_t; `probe[t]` is a point of the final interval for t at which
/// that walk is also a minimizer, so reconstruct_walk(G, s, t, h, probe[t])
/// re-derives an equivalent walk.
struct CompressedInstance {
  std::vector<Vertex> vertices;  ///< compact index -> vertex of G
  Graph graph;
  std::vector<Rational> probe;  ///< per compact target
  std::size_t h = 0;
};

CompressedInstance build_compressed(const Graph& g, const std::vector<Vertex>& s, std::size_t h,
                                    const ValueLocator& locator = {});

/// |S| = min(n, ceil(3 (n / h) ln n)), drawn uniformly without replacement,
/// returned sorted.
std::vector<Vertex> sample_vertex_set(std::size_t n, std::size_t h, std::mt19937_64& rng);

struct TradeoffOptions {
  std::uint64_t seed = 0;
  ValueLocator locator;  ///< empty means locate_value
  PhiMemo* shared_memo = nullptr;
  std::size_t max_attempts = 100000;
  /// Attempts ending with a violated y* before solve_simple settles the
  /// instance.
  std::size_t violation_retries = 2;
};

struct TradeoffStats {
  std::size_t attempts = 0;
  std::size_t last_phase = 0;        ///< phases 0 .. last_phase ran
  std::size_t sample_size = 0;       ///< |S| in the last attempt
  std::size_t compressed_edges = 0;  ///< edges of G' in the last attempt
  bool fallback = false;             ///< settled by solve_simple
};

struct TradeoffOutcome {
  SolveOutcome::Kind kind = SolveOutcome::Kind::Feasible;
  BoundVector x;
  std::optional<Certificate> certificate;  ///< set when infeasible
  TradeoffStats stats;
};

/// Truncated phases, compression over a sampled S, recursive solve of G',
/// propagation and verification. Returned outcomes are verified: x^max when
/// feasible, a certificate on G when infeasible. Infeasibility evidence that
/// does not map to a certificate on G is settled by solve_simple.
TradeoffOutcome solve_tradeoff(const Graph& g, std::size_t h, const TradeoffOptions& opt);
TradeoffOutcome solve_tradeoff(const Graph& g, std::size_t h, std::uint64_t seed);

/// Index of the earliest phase j with 2^j >= h, capped at the last phase.
std::size_t tradeoff_last_phase(std::size_t n, std::size_t h);

}  // namespace m2vpi
