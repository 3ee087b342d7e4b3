#include "m2vpi/kcycle.hpp"

#include <algorithm>

#include "m2vpi/counters.hpp"
#include "m2vpi/locate.hpp"
#include "m2vpi/reconstruct.hpp"

namespace m2vpi {

std::vector<std::size_t> lower_envelope(const std::vector<Line>& lines) {
  std::vector<std::size_t> order(lines.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (lines[x].slope != lines[y].slope) return lines[x].slope > lines[y].slope;
    return lines[x].intercept < lines[y].intercept;
  });
  std::vector<std::size_t> hull;
  auto cross = [&](std::size_t p, std::size_t q) -> Rational {
    return (lines[q].intercept - lines[p].intercept) / (lines[p].slope - lines[q].slope);
  };
  for (std::size_t idx : order) {
    if (!hull.empty() && lines[hull.back()].slope == lines[idx].slope) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], idx) <= cross(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(idx);
  }
  return hull;
}

std::vector<Rational> envelope_breakpoints(const std::vector<Line>& lines, const std::vector<std::size_t>& hull) {
  std::vector<Rational> xs;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Line& p = lines[hull[i]];
    const Line& q = lines[hull[i + 1]];
    xs.push_back((q.intercept - p.intercept) / (p.slope - q.slope));
  }
  return xs;
}

KCycleContext::KCycleContext(const Graph& g) : g_(&g), zero_(zero_cost_instance(g)), recip_(reciprocal_gain_instance(g)) {}

namespace {

// A closed walk kept either explicitly or as the locate_cycle query that
// re-derives it.
struct Handle {
  Rational phi;
  std::optional<Walk> walk;
  Rational xi;
};

struct Pair {
  Rational cost;
  Rational gain;
  bool operator==(const Pair&) const = default;
};

enum class Tag { A, B };

class Search {
 public:
  Search(const KCycleContext& ctx, Vertex v, std::size_t k) : ctx_(ctx), g_(ctx.graph()), v_(v), k_(k) {}

  KCycleResult run();

 private:
  const KCycleContext& ctx_;
  const Graph& g_;
  Vertex v_;
  std::size_t k_;
  ExtRational a_ = ExtRational::neg_inf();
  ExtRational b_ = ExtRational::pos_inf();
  Tag tag_ = Tag::A;
  std::optional<Handle> cmin_, cmax_;

  Walk materialize(const Handle& h) const {
    if (h.walk) return *h.walk;
    return locate_cycle(g_, v_, k_, h.xi).witness(g_);
  }
  Rational interior() const;
  KCycleResult bicycle(const Walk& le, const Walk& ge) const;
  KCycleResult neg_unit(const Walk& c) const;
  KCycleResult value(const Rational& phi, Walk w) const;
  // Returns a terminal result, or nothing to continue.
  std::optional<KCycleResult> decide(const Rational& g);
  std::optional<KCycleResult> check_pinned() const;
  KCycleResult endgame(const Pair& p);
};

Rational Search::interior() const {
  if (a_.is_finite() && b_.is_finite()) return (a_.value() + b_.value()) / 2;
  if (b_.is_finite()) return b_.value() - 1;
  if (a_.is_finite()) return a_.value() + 1;
  return Rational(0);
}

KCycleResult Search::bicycle(const Walk& le, const Walk& ge) const {
  Certificate c = Certificate::bicycle(le, ge, Walk::empty_at(v_));
  if (!verify_certificate(g_, c)) throw std::logic_error("phi_vk: bicycle does not verify");
  KCycleResult r;
  r.infeasibility = std::move(c);
  return r;
}

KCycleResult Search::neg_unit(const Walk& w) const {
  Certificate c = Certificate::neg_unit_gain(w);
  if (!verify_certificate(g_, c)) throw std::logic_error("phi_vk: unit-gain walk does not verify");
  KCycleResult r;
  r.infeasibility = std::move(c);
  return r;
}

KCycleResult Search::value(const Rational& phi, Walk w) const {
  if (!w.closed() || w.from != v_ || w.length() == 0 || w.length() > k_ || !(w.summary.gain < 1) ||
      w.summary.cost / (1 - w.summary.gain) != phi) {
    throw std::logic_error("phi_vk: witness does not realize the value");
  }
  KCycleResult r;
  r.value = ExtRational(phi);
  r.witness = std::move(w);
  return r;
}

std::optional<KCycleResult> Search::check_pinned() const {
  if (cmin_ && cmax_ && cmin_->phi < cmax_->phi) return bicycle(materialize(*cmin_), materialize(*cmax_));
  return std::nullopt;
}

std::optional<KCycleResult> Search::decide(const Rational& g) {
  CycleLocateOutcome o = locate_cycle(g_, v_, k_, g);
  switch (o.tag) {
    case CycleCase::Below:
      b_ = ExtRational(g);
      cmin_ = Handle{o.phi(), std::nullopt, g};
      return check_pinned();
    case CycleCase::Above:
      if (tag_ == Tag::A) throw std::logic_error("phi_vk: lower bound above a proven maximum");
      a_ = ExtRational(g);
      cmax_ = Handle{o.phi(), std::nullopt, g};
      return check_pinned();
    case CycleCase::StrictlyBetween:
      a_ = ExtRational(g);
      tag_ = Tag::A;
      return std::nullopt;
    case CycleCase::NegUnitGain: return neg_unit(o.witness(g_));
    case CycleCase::Equal: return value(g, o.witness(g_));
  }
  return std::nullopt;
}

KCycleResult Search::endgame(const Pair& p) {
  const Rational z0 = interior();
  auto p_walk = [&] {
    Walk w = reconstruct_walk(g_, v_, v_, k_, z0);
    if (w.summary.cost != p.cost || w.summary.gain != p.gain) throw std::logic_error("phi_vk: P does not reconstruct");
    return w;
  };
  if (p.gain < 1) {
    const Rational phi_p = p.cost / (1 - p.gain);
    if (tag_ == Tag::A) return value(phi_p, p_walk());
    if (phi_p < cmax_->phi) return bicycle(p_walk(), materialize(*cmax_));
    if (phi_p > cmax_->phi) throw std::logic_error("phi_vk: P above the pinned lower bound");
    CycleLocateOutcome o = locate_cycle(g_, v_, k_, phi_p);
    switch (o.tag) {
      case CycleCase::Equal: return value(phi_p, o.witness(g_));
      case CycleCase::Below: return bicycle(o.witness(g_), materialize(*cmax_));
      case CycleCase::Above: return bicycle(p_walk(), o.witness(g_));
      case CycleCase::NegUnitGain: return neg_unit(o.witness(g_));
      case CycleCase::StrictlyBetween: break;
    }
    throw std::logic_error("phi_vk: strictly-between at phi(P)");
  }
  if (p.gain > 1) {
    if (tag_ == Tag::A) throw std::logic_error("phi_vk: gain above one under a proven maximum");
    return bicycle(materialize(*cmin_), p_walk());
  }
  if (sgn(p.cost) < 0) return neg_unit(p_walk());
  throw std::logic_error("phi_vk: zero-cost unit-gain P");
}

KCycleResult Search::run() {
  // Extreme-gain closed walks through v.
  Walk lo = reconstruct_walk(ctx_.zero_cost(), v_, v_, k_, Rational(1));
  if (lo.length() == 0) return KCycleResult{};
  lo = make_walk(g_, lo.edges);
  if (!(lo.summary.gain < 1)) return KCycleResult{};
  cmin_ = Handle{Rational(lo.summary.cost / (1 - lo.summary.gain)), lo, Rational(0)};

  Walk hi = reconstruct_walk(ctx_.reciprocal(), v_, v_, k_, Rational(1));
  if (hi.length() > 0) {
    hi = make_walk(g_, hi.edges);
    if (hi.summary.gain > 1) {
      cmax_ = Handle{Rational(hi.summary.cost / (1 - hi.summary.gain)), hi, Rational(0)};
      if (cmax_->phi > cmin_->phi) return bicycle(*cmin_->walk, *cmax_->walk);
      tag_ = Tag::B;
    }
  }

  const std::size_t n = g_.n();
  std::vector<std::optional<Pair>> cur(n), next(n);
  cur[v_] = Pair{Rational(0), Rational(1)};
  ScratchCells walks(4 * n);
  for (std::size_t j = 1; j <= k_; ++j) {
    {
      ScratchCells scratch(4 * (g_.m() + n));
      std::vector<Rational> xs;
      std::vector<Line> lines;
      for (Vertex w = 0; w < n; ++w) {
        lines.clear();
        if (cur[w]) lines.push_back(Line{cur[w]->gain, cur[w]->cost});
        for (EdgeId id : g_.out_edges(w)) {
          const Edge& e = g_.edge(id);
          if (!cur[e.v]) continue;
          lines.push_back(Line{Rational(e.g * cur[e.v]->gain), Rational(e.c + e.g * cur[e.v]->cost)});
        }
        if (lines.size() < 2) continue;
        for (Rational& x : envelope_breakpoints(lines, lower_envelope(lines))) {
          if (ExtRational(x) > a_ && ExtRational(x) < b_) xs.push_back(std::move(x));
        }
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

      // Binary search over the breakpoints strictly inside (a, b).
      std::size_t lo_i = 0, hi_i = xs.size();  // candidates xs[lo_i, hi_i)
      while (lo_i < hi_i) {
        const std::size_t mid = lo_i + (hi_i - lo_i) / 2;
        const Rational g = xs[mid];
        if (auto done = decide(g)) return *done;
        if (b_ == ExtRational(g)) hi_i = mid;
        else lo_i = mid + 1;
      }
    }

    // Minimizers at an interior point; the gap has no breakpoint.
    const Rational z0 = interior();
    for (Vertex w = 0; w < n; ++w) {
      std::optional<Pair> best = cur[w];
      std::optional<Rational> best_val;
      if (best) best_val = best->cost + best->gain * z0;
      for (EdgeId id : g_.out_edges(w)) {
        const Edge& e = g_.edge(id);
        if (!cur[e.v]) continue;
        Pair cand{Rational(e.c + e.g * cur[e.v]->cost), Rational(e.g * cur[e.v]->gain)};
        Rational val = cand.cost + cand.gain * z0;
        if (!best_val || val < *best_val || (val == *best_val && cand.gain < best->gain)) {
          best_val = std::move(val);
          best = std::move(cand);
        }
      }
      next[w] = std::move(best);
    }
    counters().edge_relaxations += g_.m();
    if (next == cur) break;  // later lengths repeat this choice inside the same gap
    std::swap(cur, next);
  }
  return endgame(*cur[v_]);
}

}  // namespace

KCycleResult phi_vk(const KCycleContext& ctx, Vertex v, std::size_t k) {
  if (v >= ctx.graph().n()) throw std::invalid_argument("phi_vk: vertex out of range");
  if (k == 0) throw std::invalid_argument("phi_vk: k must be positive");
  ++counters().kcycle_calls;
  return Search(ctx, v, k).run();
}

KCycleResult phi_vk(const Graph& g, Vertex v, std::size_t k) { return phi_vk(KCycleContext(g), v, k); }

}  // namespace m2vpi
