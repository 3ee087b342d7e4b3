#include <algorithm>

#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "m2vpi/counters.hpp"
#include "m2vpi/generators.hpp"
#include "m2vpi/oracle.hpp"
#include "m2vpi/tradeoff.hpp"

using namespace m2vpi;
using fixtures::q;

namespace {

std::vector<Vertex> random_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < n; ++v)
    if (rng() % 2) s.push_back(v);
  if (s.empty()) s.push_back(static_cast<Vertex>(rng() % n));
  return s;
}

}  // namespace

TEST_SUITE("tradeoff") {
  TEST_CASE("last phase and sample size") {
    CHECK(tradeoff_last_phase(20, 1) == 0);
    CHECK(tradeoff_last_phase(20, 2) == 1);
    CHECK(tradeoff_last_phase(20, 5) == 3);
    CHECK(tradeoff_last_phase(20, 20) == 4);  // capped at the last phase
    std::mt19937_64 rng(1);
    CHECK(sample_vertex_set(400, 40, rng).size() == 180);  // ceil(3 * 10 * ln 400)
    CHECK(sample_vertex_set(30, 8, rng).size() == 30);
    auto s = sample_vertex_set(400, 40, rng);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  }

  TEST_CASE("instance A") {
    Graph a = fixtures::instance_a();
    for (std::size_t h : {1, 2}) {
      TradeoffOutcome o = solve_tradeoff(a, h, 3);
      REQUIRE(o.kind == SolveOutcome::Kind::Feasible);
      CHECK(o.x == BoundVector{ExtRational(q(2)), ExtRational(q(2))});
    }
    // S = V, h = 1: G' repeats the edges of A.
    CompressedInstance c = build_compressed(a, {0, 1}, 1);
    REQUIRE(c.graph.m() == 2);
    for (const Edge& e : c.graph.edges()) {
      CHECK(e.u != e.v);
      CHECK(e.c == 1);
      CHECK(e.g == q(1, 2));
    }
  }

  TEST_CASE("compressed edges minimize over short walks") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
      const std::size_t n = 2 + it % 6;
      Graph g = gen_feasible_random(n, std::min<std::size_t>(2 * n * n, 2 * n + it % 4), 1200 + it);
      ShostakResult truth = shostak_enumerate(g);
      const std::size_t h = 1 + it % 3;
      std::vector<Vertex> s = random_subset(rng, n);
      CompressedInstance c = build_compressed(g, s, h);
      for (std::size_t ti = 0; ti < s.size(); ++ti) {
        const Vertex t = s[ti];
        for (std::size_t si = 0; si < s.size(); ++si) {
          const Vertex from = s[si];
          std::optional<Rational> best;
          bool nonempty = false;
          brute::walks_from(g, from, h, [&](const brute::WalkInfo& w) {
            if (w.end != t) return;
            nonempty |= !w.edges.empty();
            if (!truth.x_le[t].is_finite()) return;
            Rational val = w.cost + w.gain * truth.x_le[t].value();
            if (!best || val < *best) best = val;
          });
          const Edge* edge = nullptr;
          for (const Edge& e : c.graph.edges())
            if (e.u == si && e.v == ti) edge = &e;
          if (si != ti) CHECK((edge != nullptr) == nonempty);
          if (!edge || !truth.x_le[t].is_finite()) continue;
          CHECK(edge->c + edge->g * truth.x_le[t].value() == *best);
        }
      }
      // Every edge is a chain of inequalities of G, so G' never over-tightens.
      SolveOutcome sub = solve_simple(c.graph, it);
      REQUIRE(sub.kind == SolveOutcome::Kind::Feasible);
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(sub.x[i] >= truth.x_le[s[i]]);
    }
  }

  TEST_CASE("agrees with the simple solver") {
    for (int it = 0; it < 24; ++it) {
      const std::size_t n = 2 + it % 11;
      Graph g = gen_feasible_random(n, 2 * n, 2500 + it);
      PhiMemo memo;
      SolveOptions so;
      so.seed = it;
      so.shared_memo = &memo;
      SolveOutcome ref = solve_simple(g, so);
      for (std::size_t h : {std::size_t{1}, std::size_t{2}, std::size_t{4}, std::size_t{8}, n}) {
        TradeoffOptions to;
        to.seed = it;
        to.shared_memo = &memo;
        TradeoffOutcome o = solve_tradeoff(g, h, to);
        REQUIRE(o.kind == SolveOutcome::Kind::Feasible);
        CHECK(o.x == ref.x);
      }
    }
  }

  TEST_CASE("planted long cycles are recovered") {
    for (int it = 0; it < 6; ++it) {
      Graph g = gen_planted_long_cycle(12, 24, 9, 40 + it);
      SolveOutcome ref = solve_simple(g, it);
      TradeoffOutcome o = solve_tradeoff(g, 2, it);
      REQUIRE(o.kind == SolveOutcome::Kind::Feasible);
      CHECK(o.x == ref.x);
    }
  }

  TEST_CASE("infeasible inputs end with a verified certificate") {
    for (int it = 0; it < 20; ++it) {
      const std::size_t n = 2 + it % 7;
      Graph g = gen_infeasible_bicycle(n, 2 * n, 3100 + it);
      TradeoffOutcome o = solve_tradeoff(g, 1 + it % 3, it);
      REQUIRE(o.kind == SolveOutcome::Kind::Infeasible);
      REQUIRE(o.certificate.has_value());
      CHECK(verify_certificate(g, *o.certificate));
    }
  }

  TEST_CASE("sampled sets hit every window of a long cycle") {
    // Windows of h consecutive cycle vertices, i.e. subpaths with h - 1 edges.
    const std::size_t n = 400, len = 240, h = 40;
    int hits = 0;
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
      std::mt19937_64 rng(seed);
      std::vector<Vertex> s = sample_vertex_set(n, h, rng);
      std::vector<char> in(n, 0);
      for (Vertex v : s) in[v] = 1;
      bool all = true;
      for (std::size_t i = 0; i < len && all; ++i) {
        bool any = false;
        for (std::size_t d = 0; d < h; ++d) any |= in[(i + d) % len] != 0;
        all = any;
      }
      hits += all;
    }
    CHECK(hits >= 90);
  }

  TEST_CASE("compression scratch stays linear per target") {
    Graph g = gen_feasible_random(10, 30, 77);
    reset_counters();
    std::vector<Vertex> s{0, 2, 4, 6, 8};
    build_compressed(g, s, 4);
    CHECK(counters().live_cells == 0);
    CHECK(counters().peak_cells <= 8 * static_cast<std::int64_t>(g.n() + g.m()));
  }

  TEST_CASE("pluggable locator") {
    Graph g = gen_feasible_random(6, 12, 9);
    std::size_t calls = 0;
    ValueLocator counting = [&](const Graph& gg, Vertex t, const Rational& xi) {
      ++calls;
      return locate_value(gg, t, xi);
    };
    CompressedInstance a = build_compressed(g, {0, 1, 2, 3, 4, 5}, 3, counting);
    CompressedInstance b = build_compressed(g, {0, 1, 2, 3, 4, 5}, 3);
    CHECK(calls > 0);
    CHECK(a.graph == b.graph);
  }
}
