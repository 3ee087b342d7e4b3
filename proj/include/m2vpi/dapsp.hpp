#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "m2vpi/distances.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

/// G' for a uniform instance G on n vertices. Vertex layout:
///   v' = v           copy of G (edges u'v' with cost c(uv))
///   v'' = n + v      target copy, reached by v'v'' at cost 0
///   v''' = 2n + v    exit copy: v'v''' at cost mu(v), zero-cost copy of G,
///                    and v'''v'' at cost 0
/// mu(v) is the least discounted cost of an infinite walk that stays in the
/// strongly connected component of v; the exit edge exists iff it is finite.
/// delta_G(u, v) = delta_G'(u', v''), and for every source s of G' and every
/// target v'' or v''' some simple path attains delta_G'(s, .). Targets in the
/// v' layer carry no such guarantee and are never queried.
struct ReducedInstance {
  UniformInstance reduced;
  std::size_t n = 0;
  std::vector<ExtRational> mu;  ///< per vertex of G; +inf on acyclic components

  Vertex source_of(Vertex v) const { return v; }
  Vertex target_of(Vertex v) const { return static_cast<Vertex>(n + v); }
  Vertex exit_of(Vertex v) const { return static_cast<Vertex>(2 * n + v); }
  /// The v'' layer, in vertex order of G.
  std::vector<Vertex> targets() const;
};

/// Least discounted cost of an infinite walk from v inside the strongly
/// connected component of v, by exact policy iteration. +inf when the
/// component has no edge.
std::vector<ExtRational> component_walk_values(const UniformInstance& inst);

ReducedInstance madani_reduce(const UniformInstance& inst);

/// Edge costs and the discount converted once to the distance type.
template <class T>
struct DistKernel {
  const Graph* g = nullptr;
  std::vector<T> cost;  ///< by edge id
  T gamma;

  explicit DistKernel(const UniformInstance& inst);
};

/// table[j][s] = delta^{<=j}(s, t) for j = 0..k.
template <class T>
std::vector<std::vector<T>> delta_to_target(const DistKernel<T>& kr, Vertex t, std::size_t k);

/// Exact-length distances from one source. exact[j][t] = delta^j(s, t) for
/// j = 0..k; pred[j][t] is the last edge of one realizing walk (smallest id
/// among minimizers), kept only on request.
template <class T>
struct SourceTable {
  Vertex s = 0;
  std::vector<std::vector<T>> exact;
  std::vector<std::vector<std::optional<EdgeId>>> pred;

  /// Realizing walk for (t, j); nullopt when delta^j(s, t) is +inf or
  /// predecessors were not kept.
  std::optional<Walk> walk(const Graph& g, Vertex t, std::size_t j) const;
};

template <class T>
SourceTable<T> delta_from_source(const DistKernel<T>& kr, Vertex s, std::size_t k, bool keep_walks = false);

/// Lower envelope of the lines y = delta^i(s, v) + gamma^i x, i = 0..k, for
/// every v. Segment slopes decrease from left to right.
template <class T>
struct EnvelopeStructure {
  struct Segment {
    std::size_t line;  ///< index i
    T intercept;
    T slope;
    T from;  ///< left breakpoint; ignored for the first segment
  };
  Vertex s = 0;
  std::size_t k = 0;
  std::vector<std::vector<Segment>> per_vertex;

  /// D(s, v, x) for ascending xs (finite), by one forward sweep. +inf when
  /// no line through v is finite.
  std::vector<T> query(Vertex v, const std::vector<T>& xs) const;
};

template <class T>
EnvelopeStructure<T> build_envelope(const DistKernel<T>& kr, const SourceTable<T>& table);
template <class T>
EnvelopeStructure<T> build_envelope(const DistKernel<T>& kr, Vertex s, std::size_t k);

struct HittingSet {
  std::vector<Vertex> X;  ///< sorted
  std::size_t k = 0;
  std::size_t family_size = 0;  ///< |Q|
};

/// ceil((n / (k + 1)) (ln q + 1)) + 1; the greedy never exceeds it.
std::size_t hitting_set_bound(std::size_t n, std::size_t k, std::size_t q);

/// Greedy hitting set of `family` (vertex sets of size k + 1 over 0..n-1).
/// Each chosen vertex hits the most remaining members, smallest id on ties.
HittingSet greedy_hitting_set(std::size_t n, std::size_t k, const std::vector<std::vector<Vertex>>& family);

/// Vertex sets of the exact-k walks of `table` that are simple paths.
template <class T>
std::vector<std::vector<Vertex>> simple_prefix_family(const Graph& g, const SourceTable<T>& table, std::size_t k);

/// k-hitting set of the discounted shortest paths from `sources`: greedy over
/// the simple exact-k optimal walks.
template <class T>
HittingSet build_hitting_set(const DistKernel<T>& kr, const std::vector<Vertex>& sources, std::size_t k);

/// Distances for a set of sources against a fixed target list. rows[i][j] =
/// delta(sources[i], targets[j]).
template <class T>
struct SourceRows {
  std::vector<Vertex> sources;
  std::vector<std::vector<T>> rows;
};

/// min(d_h(s, t), delta^{<=h}(s, t)), d seeded with delta(x, t) on X.
/// `near[i][j]` = delta^{<=h}(sources[i], targets[j]).
template <class T>
std::vector<std::vector<T>> reduce_sources_v1(const DistKernel<T>& kr, const std::vector<Vertex>& sources,
                                              const std::vector<Vertex>& targets, std::size_t h,
                                              const SourceRows<T>& from_x, const std::vector<std::vector<T>>& near);

/// min over x in X of D(s, x, delta(x, t)), min delta^{<=h}(s, t), using the
/// envelopes of the sources built with k = h.
template <class T>
std::vector<std::vector<T>> reduce_sources_v2(const std::vector<EnvelopeStructure<T>>& envelopes,
                                              const std::vector<Vertex>& targets, const SourceRows<T>& from_x,
                                              const std::vector<std::vector<T>>& near);

struct DapspOptions {
  std::optional<std::size_t> d;  ///< nullopt = max(2, ceil(n^{1/2} / m^{1/4}))
};

struct DapspStats {
  std::size_t d = 0;
  std::size_t reduced_n = 0;
  std::vector<std::size_t> stage_sources;  ///< |S_0|, |S_1|, ...
  bool cap_fallback = false;               ///< some stage exceeded its size cap
};

std::size_t auto_branching(std::size_t n, std::size_t m);

/// All-pairs discounted distances of G, through the reduction.
template <class T>
DiscountedDistances<T> solve_dapsp(const UniformInstance& inst, const DapspOptions& opt = {},
                                   DapspStats* stats = nullptr);

/// naive_dapsp on G', read back on the (u', v'') pairs.
template <class T>
DiscountedDistances<T> naive_dapsp_reduced(const UniformInstance& inst);

}  // namespace m2vpi
