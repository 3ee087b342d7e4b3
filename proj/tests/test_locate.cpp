#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "m2vpi/counters.hpp"
#include "m2vpi/generators.hpp"
#include "m2vpi/locate.hpp"
#include "m2vpi/oracle.hpp"

using namespace m2vpi;
using fixtures::q;

namespace {

// Checks the declared case against enumeration of closed walks.
void check_cycle_case(const Graph& g, Vertex v, std::size_t k, const Rational& xi) {
  CycleLocateOutcome o = locate_cycle(g, v, k, xi);
  brute::ClosedStats st = brute::closed_walks(g, v, k);
  auto lex = brute::lexmin(g, v, v, k, xi);
  REQUIRE(lex.has_value());
  CHECK(o.cost + o.gain * xi == lex->first);
  CHECK(o.gain == lex->second);
  const ExtRational x(xi);
  switch (o.tag) {
    case CycleCase::Below: {
      CHECK(st.min_upper < x);
      Walk w = o.witness(g);
      CHECK(w.summary.gain < 1);
      CHECK(w.summary.cost / (1 - w.summary.gain) < xi);
      CHECK(w.length() <= k);
      break;
    }
    case CycleCase::Above: {
      CHECK(st.max_lower > x);
      Walk w = o.witness(g);
      CHECK(w.summary.gain > 1);
      CHECK(w.summary.cost / (1 - w.summary.gain) > xi);
      break;
    }
    case CycleCase::StrictlyBetween:
      CHECK(st.max_lower <= x);
      CHECK(x < st.min_upper);
      break;
    case CycleCase::NegUnitGain: {
      CHECK(st.neg_unit);
      Walk w = o.witness(g);
      CHECK(w.summary.gain == 1);
      CHECK(w.summary.cost < 0);
      break;
    }
    case CycleCase::Equal:
      CHECK(st.min_upper == x);
      CHECK(o.witness(g).closed());
      break;
  }
}

}  // namespace

TEST_SUITE("locate") {
  TEST_CASE("locate_cycle examples") {
    Graph loop = fixtures::self_loop(4, 1, 2);
    CHECK(locate_cycle(loop, 0, 1, q(10)).tag == CycleCase::Below);
    CHECK(locate_cycle(loop, 0, 1, q(10)).witness(loop).edges == std::vector<EdgeId>{0});
    CHECK(locate_cycle(loop, 0, 1, q(8)).tag == CycleCase::Equal);
    CHECK(locate_cycle(loop, 0, 1, q(7)).tag == CycleCase::StrictlyBetween);
    Graph nug = fixtures::neg_unit_cycle();
    for (long xi : {-5L, 0L, 9L}) CHECK(locate_cycle(nug, 0, 2, q(xi)).tag == CycleCase::NegUnitGain);
    Graph up = fixtures::self_loop(-1, 2, 1);  // lower bound 1
    CHECK(locate_cycle(up, 0, 1, q(0)).tag == CycleCase::Above);
  }

  TEST_CASE("locate_cycle agrees with closed-walk enumeration") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 250; ++it) {
      const std::size_t n = 1 + it % 6;
      Graph g = gen_random(n, n + it % 9, 4000 + it);
      const Vertex v = static_cast<Vertex>(it % n);
      const std::size_t k = 1 + it % 4;
      // Probe both random thresholds and the exact bound itself.
      check_cycle_case(g, v, k, fixtures::rand_q(rng, -10, 10, 4));
      brute::ClosedStats st = brute::closed_walks(g, v, k);
      if (st.min_upper.is_finite()) check_cycle_case(g, v, k, st.min_upper.value());
      if (st.max_lower.is_finite()) check_cycle_case(g, v, k, st.max_lower.value());
    }
  }

  TEST_CASE("locate_global examples") {
    Graph a = fixtures::instance_a();
    GlobalLocateOutcome r = locate_global(a, {ExtRational(q(3)), ExtRational(q(3))});
    REQUIRE(r.kind == GlobalLocateOutcome::Kind::Violation);
    CHECK(verify_locate_certificate(a, *r.certificate));
    CHECK(locate_global(a, {ExtRational(q(2)), ExtRational(q(2))}).kind == GlobalLocateOutcome::Kind::NoViolation);
    reset_counters();
    GlobalLocateOutcome none = locate_global(a, {ExtRational::neg_inf(), ExtRational::neg_inf()});
    CHECK(none.kind == GlobalLocateOutcome::Kind::NoViolation);
    CHECK(none.phases == 0);
    CHECK(counters().edge_relaxations == 0);
  }

  TEST_CASE("locate_value examples") {
    Graph a = fixtures::instance_a();
    CHECK(locate_value(a, 0, q(3)).answer == ValueAnswer::Below);
    CHECK(locate_value(a, 0, q(2)).answer == ValueAnswer::NotBelow);
  }

  TEST_CASE("phase update is a pure function") {
    Graph g = gen_feasible_random(5, 12, 8);
    BoundVector xi(5, ExtRational(q(1)));
    LocateState s0 = locate_initial(g, xi);
    LocateState s1 = locate_phase(g, s0), s1b = locate_phase(g, s0);
    CHECK(s1.y == s1b.y);
    CHECK(s1.parent == s1b.parent);
    for (Vertex w = 0; w < 5; ++w) {
      if (s1.parent[w]) {
        const Edge& e = g.edge(*s1.parent[w]);
        CHECK(s1.y[w] == ExtRational(Rational((s0.y[e.u].value() - e.c) / e.g)));
      } else {
        CHECK(s1.y[w] == xi[w]);
      }
    }
  }

  TEST_CASE("locate_global and locate_value agree with the oracle") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 150; ++it) {
      const std::size_t n = 1 + it % 6;
      Graph g = gen_feasible_random(n, std::min(2 * n * n, n + it % 10), 6000 + it);
      ShostakResult ref = shostak_enumerate(g);
      REQUIRE(ref.feasible);
      BoundVector xi(n);
      bool expect = false;
      for (std::size_t v = 0; v < n; ++v) {
        int mode = std::uniform_int_distribution<int>(0, 3)(rng);
        if (mode == 0) xi[v] = ExtRational::neg_inf();
        else if (mode == 1 && ref.x_le[v].is_finite()) xi[v] = ref.x_le[v];
        else xi[v] = ExtRational(fixtures::rand_q(rng, -12, 12, 4));
        expect = expect || ref.x_le[v] < xi[v];
      }
      reset_counters();
      GlobalLocateOutcome r = locate_global(g, xi);
      CHECK((r.kind == GlobalLocateOutcome::Kind::Violation) == expect);
      CHECK(r.kind != GlobalLocateOutcome::Kind::Infeasible);
      if (r.certificate) {
        const LocateCertificate& c = *r.certificate;
        CHECK(verify_locate_certificate(g, c));
        CHECK(ref.x_le[c.source] < xi[c.source]);
        CHECK(c.threshold == xi[c.source].value());
        // Work bound relative to the returned certificate.
        std::vector<char> seen(n, 0);
        seen[c.path.from] = 1;
        for (EdgeId e : c.path.edges) seen[g.edge(e).v] = 1;
        for (EdgeId e : c.cycle.edges) seen[g.edge(e).v] = 1;
        std::size_t ell = 0;
        for (char s : seen) ell += s;
        CHECK(counters().edge_relaxations <= 2 * g.m() * ell);
      }
      for (Vertex t = 0; t < n; ++t) {
        Rational probe = fixtures::rand_q(rng, -12, 12, 4);
        ValueAnswer a = locate_value(g, t, probe).answer;
        CHECK((a == ValueAnswer::Below) == (ref.x_le[t] < ExtRational(probe)));
      }
    }
  }

  TEST_CASE("single violator certificate does not depend on the other thresholds") {
    std::mt19937_64 rng(31);
    int tested = 0;
    for (int it = 0; tested < 30 && it < 400; ++it) {
      const std::size_t n = 2 + it % 5;
      Graph g = gen_feasible_random(n, 2 * n + it % 5, 8000 + it);
      ShostakResult ref = shostak_enumerate(g);
      const Vertex v = static_cast<Vertex>(it % n);
      if (!ref.x_le[v].is_finite()) continue;
      ++tested;
      const Rational target = ref.x_le[v].value() + fixtures::rand_q(rng, 1, 6, 3);
      std::optional<LocateCertificate> first;
      for (int p = 0; p < 10; ++p) {
        BoundVector xi(n);
        for (std::size_t w = 0; w < n; ++w) {
          if (w == v) xi[w] = ExtRational(target);
          else if (!ref.x_le[w].is_finite() || std::uniform_int_distribution<int>(0, 2)(rng) == 0)
            xi[w] = ExtRational::neg_inf();
          else xi[w] = ExtRational(Rational(ref.x_le[w].value() - fixtures::rand_q(rng, 0, 6, 3)));
        }
        GlobalLocateOutcome r = locate_global(g, xi);
        REQUIRE(r.certificate.has_value());
        if (!first) {
          first = r.certificate;
          continue;
        }
        CHECK(r.certificate->source == first->source);
        CHECK(r.certificate->path.edges == first->path.edges);
        CHECK(r.certificate->cycle.edges == first->cycle.edges);
      }
    }
    CHECK(tested == 30);
  }
}
