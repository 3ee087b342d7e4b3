#include "m2vpi/locate.hpp"

#include <algorithm>
#include <cstdint>

#include "m2vpi/counters.hpp"
#include "m2vpi/reconstruct.hpp"

namespace m2vpi {

const char* to_string(CycleCase c) {
  switch (c) {
    case CycleCase::Below: return "below";
    case CycleCase::Above: return "above";
    case CycleCase::StrictlyBetween: return "strictly-between";
    case CycleCase::NegUnitGain: return "neg-unit-gain";
    case CycleCase::Equal: return "equal";
  }
  return "?";
}

Rational CycleLocateOutcome::phi() const {
  if (tag == CycleCase::StrictlyBetween || tag == CycleCase::NegUnitGain) {
    throw std::logic_error("phi of a located walk without a finite bound");
  }
  return cost / (1 - gain);
}

Walk CycleLocateOutcome::witness(const Graph& g) const {
  if (tag == CycleCase::StrictlyBetween) throw std::logic_error("no witness for the strictly-between case");
  Walk w = reconstruct_walk(g, v, v, k, xi);
  if (w.length() == 0 || w.summary.cost != cost || w.summary.gain != gain) {
    throw std::logic_error("locate_cycle witness does not match its summary");
  }
  return w;
}

CycleLocateOutcome locate_cycle(const Graph& g, Vertex v, std::size_t k, const Rational& xi) {
  if (v >= g.n()) throw std::invalid_argument("locate_cycle: vertex out of range");
  ++counters().locate_calls;
  LexPair best;
  {
    ScratchCells cells(4 * g.n());
    best = lex_propagate_to(g, v, xi, k)[v];
  }
  CycleLocateOutcome out;
  out.v = v;
  out.k = k;
  out.xi = xi;
  const Rational& y = best.value.value();  // the empty walk keeps it finite
  out.gain = best.gain;
  out.cost = y - best.gain * xi;
  if (y < xi) {
    if (best.gain < 1) out.tag = CycleCase::Below;
    else if (best.gain > 1) out.tag = CycleCase::Above;
    else out.tag = CycleCase::NegUnitGain;
  } else {
    // y = xi, and the empty walk rules out gain > 1.
    out.tag = best.gain < 1 ? CycleCase::Equal : CycleCase::StrictlyBetween;
  }
  return out;
}

LocateState locate_initial(const Graph& g, const BoundVector& xi) {
  if (xi.size() != g.n()) throw std::invalid_argument("xi length differs from n");
  for (const ExtRational& x : xi) {
    if (x.is_pos_inf()) throw std::invalid_argument("xi entries must be finite or -inf");
  }
  return LocateState{xi, std::vector<std::optional<EdgeId>>(g.n()), 0};
}

LocateState locate_phase(const Graph& g, const LocateState& prev) {
  const std::size_t n = g.n();
  BoundVector best(n, ExtRational::neg_inf());
  std::vector<std::optional<EdgeId>> arg(n);
  for (const Edge& e : g.edges()) {
    const ExtRational& yu = prev.y[e.u];
    if (!yu.is_finite()) continue;
    ExtRational cand(Rational((yu.value() - e.c) / e.g));
    // Ascending ids, so >= keeps the largest maximizing edge.
    if (cand >= best[e.v]) {
      best[e.v] = std::move(cand);
      arg[e.v] = e.id;
    }
  }
  counters().edge_relaxations += g.m();
  LocateState next{prev.y, prev.parent, prev.phase + 1};
  for (Vertex w = 0; w < n; ++w) {
    if (arg[w] && best[w] > prev.y[w]) {
      next.y[w] = std::move(best[w]);
      next.parent[w] = arg[w];
    }
  }
  return next;
}

bool verify_locate_certificate(const Graph& g, const LocateCertificate& c) {
  if (!validate_walk(g, c.path) || !validate_walk(g, c.cycle)) return false;
  if (c.cycle.length() == 0 || !c.cycle.closed()) return false;
  if (c.path.from != c.source || c.path.to != c.cycle.from) return false;
  if (!(c.cycle.summary.gain < 1)) return false;
  const Rational phi = c.cycle.summary.cost / (1 - c.cycle.summary.gain);
  return c.path.summary.cost + c.path.summary.gain * phi < c.threshold;
}

namespace {

// Cycles of the parent graph. Following parents from x_0 visits
// x_0, x_1, ..., x_L = x_0; the closed walk in g is p(x_{L-1}) ... p(x_0).
struct ParentCycles {
  std::vector<std::vector<Vertex>> cycles;  // x_0 .. x_{L-1}
  std::vector<int> cycle_of;                // -1 when off every cycle
};

ParentCycles find_cycles(const Graph& g, const std::vector<std::optional<EdgeId>>& parent) {
  const std::size_t n = g.n();
  ParentCycles pc{{}, std::vector<int>(n, -1)};
  std::vector<std::size_t> stamp(n, 0);  // 0 unvisited, else 1 + trail start
  for (Vertex s = 0; s < n; ++s) {
    if (stamp[s] != 0) continue;
    const std::size_t mark = s + 1;
    Vertex x = s;
    while (stamp[x] == 0) {
      stamp[x] = mark;
      if (!parent[x]) break;
      x = g.edge(*parent[x]).u;
    }
    if (stamp[x] == mark && parent[x] && pc.cycle_of[x] < 0) {
      // x is on a cycle first reached by this trail
      std::vector<Vertex> cyc;
      Vertex y = x;
      do {
        pc.cycle_of[y] = static_cast<int>(pc.cycles.size());
        cyc.push_back(y);
        y = g.edge(*parent[y]).u;
      } while (y != x);
      pc.cycles.push_back(std::move(cyc));
    }
  }
  return pc;
}

// Closed walk of a parent cycle rooted at cyc[i].
Walk cycle_walk(const Graph& g, const std::vector<std::optional<EdgeId>>& parent, const std::vector<Vertex>& cyc,
                std::size_t i) {
  const std::size_t len = cyc.size();
  std::vector<EdgeId> es;
  es.reserve(len);
  // x_i -> x_{i-1} -> ... -> x_{i+1} -> x_i; the step out of x_a is p(x_{a-1}).
  for (std::size_t step = 0; step < len; ++step) {
    es.push_back(*parent[cyc[(i + 2 * len - step - 1) % len]]);
  }
  return make_walk(g, es);
}

}  // namespace

GlobalLocateOutcome locate_global(const Graph& g, const BoundVector& xi) {
  ++counters().locate_calls;
  LocateState state = locate_initial(g, xi);
  GlobalLocateOutcome out;
  if (std::all_of(xi.begin(), xi.end(), [](const ExtRational& x) { return x.is_neg_inf(); })) return out;

  const std::size_t n = g.n();
  for (std::size_t j = 1; j <= n; ++j) {
    LocateState next = locate_phase(g, state);
    out.phases = j;
    if (next.y == state.y) return out;

    ParentCycles pc = find_cycles(g, next.parent);
    std::vector<Walk> rooted;  // each cycle rooted at its first listed vertex
    rooted.reserve(pc.cycles.size());
    for (const auto& cyc : pc.cycles) {
      rooted.push_back(cycle_walk(g, next.parent, cyc, 0));
      if (rooted.back().summary.gain == 1) {
        Certificate cert = Certificate::neg_unit_gain(rooted.back());
        if (!verify_certificate(g, cert)) throw std::logic_error("unit-gain parent cycle with nonnegative cost");
        out.kind = GlobalLocateOutcome::Kind::Infeasible;
        out.infeasibility = std::move(cert);
        return out;
      }
    }

    for (Vertex w = 0; w < n; ++w) {
      const int ci = pc.cycle_of[w];
      if (ci < 0 || !(rooted[ci].summary.gain < 1) || !state.y[w].is_finite()) continue;
      const auto& cyc = pc.cycles[ci];
      const std::size_t pos = static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), w) - cyc.begin());
      Walk c = cycle_walk(g, next.parent, cyc, pos);
      const Rational phi = c.summary.cost / (1 - c.summary.gain);
      if (!(state.y[w].value() > phi)) continue;

      // Follow the phase j-1 parents back from w.
      std::vector<Vertex> trail{w};
      std::vector<EdgeId> back;  // p(x_0), p(x_1), ...
      std::vector<std::size_t> seen_at(n, SIZE_MAX);
      seen_at[w] = 0;
      Vertex x = w;
      std::optional<std::size_t> loop_start;
      while (state.parent[x]) {
        EdgeId e = *state.parent[x];
        back.push_back(e);
        x = g.edge(e).u;
        if (seen_at[x] != SIZE_MAX) {
          loop_start = seen_at[x];
          break;
        }
        seen_at[x] = trail.size();
        trail.push_back(x);
      }
      if (!loop_start) {
        std::vector<EdgeId> path(back.rbegin(), back.rend());
        LocateCertificate cert{path.empty() ? Walk::empty_at(w) : make_walk(g, path), std::move(c), x,
                               xi[x].value()};
        if (!verify_locate_certificate(g, cert)) throw std::logic_error("location certificate failed to verify");
        out.kind = GlobalLocateOutcome::Kind::Violation;
        out.certificate = std::move(cert);
        return out;
      }
      // Lower-bound cycle x_q .. x_r in the phase j-1 parent graph.
      const std::size_t q = *loop_start;
      std::vector<EdgeId> path(back.begin(), back.begin() + static_cast<std::ptrdiff_t>(q));
      std::reverse(path.begin(), path.end());
      std::vector<EdgeId> lower(back.begin() + static_cast<std::ptrdiff_t>(q), back.end());
      std::reverse(lower.begin(), lower.end());
      Walk p = path.empty() ? Walk::empty_at(x) : make_walk(g, path);
      Certificate cert = Certificate::bicycle(std::move(c), make_walk(g, lower), std::move(p));
      if (!verify_certificate(g, cert)) throw std::logic_error("lower-bound parent cycle does not certify");
      out.kind = GlobalLocateOutcome::Kind::Infeasible;
      out.infeasibility = std::move(cert);
      return out;
    }
    state = std::move(next);
  }
  return out;
}

ValueLocateOutcome locate_value(const Graph& g, Vertex t, const Rational& xi) {
  if (t >= g.n()) throw std::invalid_argument("locate_value: vertex out of range");
  BoundVector v(g.n(), ExtRational::neg_inf());
  v[t] = ExtRational(xi);
  GlobalLocateOutcome r = locate_global(g, v);
  ValueLocateOutcome out;
  switch (r.kind) {
    case GlobalLocateOutcome::Kind::NoViolation: out.answer = ValueAnswer::NotBelow; break;
    case GlobalLocateOutcome::Kind::Violation:
      out.answer = ValueAnswer::Below;
      out.certificate = std::move(r.certificate);
      break;
    case GlobalLocateOutcome::Kind::Infeasible:
      out.answer = ValueAnswer::Infeasible;
      out.infeasibility = std::move(r.infeasibility);
      break;
  }
  return out;
}

}  // namespace m2vpi
