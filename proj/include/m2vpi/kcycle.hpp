#pragma once

#include <optional>
#include <vector>

#include "m2vpi/certificate.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

/// Line y = slope * x + intercept with slope > 0.
struct Line {
  Rational slope;
  Rational intercept;
};

/// Indices of the lines on the lower envelope, ordered by increasing x
/// (decreasing slope). Among lines of equal slope the smallest intercept is
/// kept, ties going to the smaller index.
std::vector<std::size_t> lower_envelope(const std::vector<Line>& lines);

/// x-coordinates where consecutive envelope lines cross, increasing.
std::vector<Rational> envelope_breakpoints(const std::vector<Line>& lines, const std::vector<std::size_t>& hull);

struct KCycleResult {
  ExtRational value = ExtRational::pos_inf();  ///< phi_{v,k}; +inf with no qualifying walk
  std::optional<Walk> witness;                 ///< closed, <= k edges, gain < 1, phi = value
  std::optional<Certificate> infeasibility;

  bool infeasible() const { return infeasibility.has_value(); }
};

/// Graph plus the zero-cost and reciprocal-gain copies used to find the
/// extreme-gain closed walks. Build once, query many (v, k).
class KCycleContext {
 public:
  explicit KCycleContext(const Graph& g);
  const Graph& graph() const { return *g_; }
  const Graph& zero_cost() const { return zero_; }
  const Graph& reciprocal() const { return recip_; }

 private:
  const Graph* g_;
  Graph zero_;
  Graph recip_;
};

KCycleResult phi_vk(const KCycleContext& ctx, Vertex v, std::size_t k);
KCycleResult phi_vk(const Graph& g, Vertex v, std::size_t k);

}  // namespace m2vpi
