#include "m2vpi/generators.hpp"

#include <algorithm>
#include <set>

namespace m2vpi {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational rand_rational(Rng& rng, long num_lo, long num_hi, long den_hi) {
  Rational r(uniform(rng, num_lo, num_hi), uniform(rng, 1, den_hi));
  r.canonicalize();
  return r;
}

Rational rand_gain(Rng& rng, int bound) { return rand_rational(rng, 1, bound, bound); }

Vertex rand_vertex(Rng& rng, std::size_t n) { return static_cast<Vertex>(uniform(rng, 0, static_cast<long>(n) - 1)); }

using EdgeList = std::vector<std::tuple<Vertex, Vertex, Rational, Rational>>;

// Edges satisfied by x; about a third are tight.
void add_feasible_edges(Rng& rng, const std::vector<Rational>& x, std::size_t count, EdgeList& out) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < count; ++i) {
    Vertex u = rand_vertex(rng, n), v = rand_vertex(rng, n);
    Rational g = rand_gain(rng, 8);
    Rational slack = uniform(rng, 0, 2) == 0 ? Rational(0) : rand_rational(rng, 0, 8, 4);
    out.emplace_back(u, v, Rational(x[u] - g * x[v] + slack), g);
  }
}

std::vector<Rational> rand_point(Rng& rng, std::size_t n) {
  std::vector<Rational> x(n);
  for (auto& xi : x) xi = rand_rational(rng, -8, 8, 4);
  return x;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Graph gen_random(std::size_t n, std::size_t m, std::uint64_t seed, int bound) {
  require(n >= 1, "n must be positive");
  Rng rng(seed);
  EdgeList es;
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u = rand_vertex(rng, n), v = rand_vertex(rng, n);
    Rational c = rand_rational(rng, -bound, bound, bound);
    es.emplace_back(u, v, c, rand_gain(rng, bound));
  }
  return make_graph(n, es);
}

Graph gen_feasible_random(std::size_t n, std::size_t m, std::uint64_t seed, std::vector<Rational>* point) {
  require(n >= 1, "n must be positive");
  Rng rng(seed);
  EdgeList es;
  std::vector<Rational> x = rand_point(rng, n);
  add_feasible_edges(rng, x, m, es);
  if (point) *point = std::move(x);
  return make_graph(n, es);
}

Graph gen_planted_long_cycle(std::size_t n, std::size_t m, std::size_t cycle_len, std::uint64_t seed) {
  require(cycle_len >= 1 && cycle_len <= n, "cycle length must be in [1, n]");
  require(m >= n, "m must be at least n");
  Rng rng(seed);
  std::vector<Rational> x = rand_point(rng, n);
  EdgeList es;
  // Tight cycle 0 -> 1 -> ... -> L-1 -> 0 with gains in [1/2, 1] and one edge
  // at 1/2, so the product is below 1.
  const std::size_t half = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cycle_len) - 1));
  for (std::size_t i = 0; i < cycle_len; ++i) {
    Vertex u = static_cast<Vertex>(i), v = static_cast<Vertex>((i + 1) % cycle_len);
    Rational g = i == half ? Rational(1, 2) : rand_rational(rng, 4, 8, 8);
    if (g > 1) g = 1;
    es.emplace_back(u, v, Rational(x[u] - g * x[v]), g);
  }
  // Tight tree edges pin the remaining vertices to x.
  for (std::size_t w = cycle_len; w < n; ++w) {
    Vertex u = static_cast<Vertex>(w), v = rand_vertex(rng, w);
    Rational g = rand_gain(rng, 8);
    es.emplace_back(u, v, Rational(x[u] - g * x[v]), g);
  }
  while (es.size() < m) {
    Vertex u = rand_vertex(rng, n), v = rand_vertex(rng, n);
    Rational g = rand_gain(rng, 8);
    es.emplace_back(u, v, Rational(x[u] - g * x[v] + 1 + rand_rational(rng, 0, 8, 4)), g);
  }
  std::shuffle(es.begin() + static_cast<std::ptrdiff_t>(cycle_len), es.end(), rng);
  return make_graph(n, es);
}

Graph gen_infeasible_bicycle(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 1, "n must be positive");
  Rng rng(seed);
  EdgeList es;
  add_feasible_edges(rng, rand_point(rng, n), m, es);

  auto rand_cycle = [&](std::size_t len, Vertex root) {
    std::vector<Vertex> vs{root};
    for (std::size_t i = 1; i < len; ++i) vs.push_back(rand_vertex(rng, n));
    return vs;
  };
  auto cycle_len = [&] { return static_cast<std::size_t>(uniform(rng, 1, std::min<long>(4, static_cast<long>(n)))); };

  if (uniform(rng, 0, 1) == 0) {
    // Unit-gain cycle with negative cost: the last gain closes the product at 1.
    std::vector<Vertex> vs = rand_cycle(cycle_len(), rand_vertex(rng, n));
    Rational prod(1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Rational g = i + 1 == vs.size() ? Rational(1 / prod) : rand_gain(rng, 4);
      prod *= g;
      es.emplace_back(vs[i], vs[(i + 1) % vs.size()], rand_rational(rng, -8, -1, 4), g);
    }
    return make_graph(n, es);
  }

  // Bicycle: upper cycle at t, lower cycle at s, path s -> t.
  Vertex s = rand_vertex(rng, n), t = rand_vertex(rng, n);
  std::vector<Vertex> up = rand_cycle(cycle_len(), t), low = rand_cycle(cycle_len(), s);
  auto lay_cycle = [&](const std::vector<Vertex>& vs, bool below_one) {
    EdgeList part;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Rational g = below_one ? rand_rational(rng, 1, 3, 4) : rand_rational(rng, 4, 12, 3);
      if (below_one && g >= 1) g = Rational(1, 2);
      if (!below_one && g <= 1) g = 2;
      part.emplace_back(vs[i], vs[(i + 1) % vs.size()], rand_rational(rng, -8, 8, 4), g);
    }
    return part;
  };
  EdgeList up_e = lay_cycle(up, true), low_e = lay_cycle(low, false);
  // Path s -> t through random intermediate vertices.
  std::vector<Vertex> pv{s};
  const long hops = uniform(rng, 0, 3);
  for (long i = 0; i < hops; ++i) pv.push_back(rand_vertex(rng, n));
  pv.push_back(t);
  EdgeList path_e;
  for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
    path_e.emplace_back(pv[i], pv[i + 1], rand_rational(rng, -8, 8, 4), rand_gain(rng, 4));
  }
  auto summary = [](const EdgeList& part) {
    Rational c(0), g(1);
    for (auto it = part.rbegin(); it != part.rend(); ++it) {
      c = std::get<2>(*it) + std::get<3>(*it) * c;
      g *= std::get<3>(*it);
    }
    return std::pair<Rational, Rational>(c, g);
  };
  auto [cu, gu] = summary(up_e);
  auto [cp, gp] = summary(path_e);
  const Rational phi_up = cu / (1 - gu);
  const Rational target = cp + gp * phi_up + 1 + rand_rational(rng, 0, 8, 4);
  // Solve the first lower-cycle cost so that phi(lower) = target.
  EdgeList rest(low_e.begin() + 1, low_e.end());
  const Rational cr = summary(rest).first;
  const Rational gl = summary(low_e).second;
  const Rational g1 = std::get<3>(low_e.front());
  std::get<2>(low_e.front()) = target * (1 - gl) - g1 * cr;
  for (auto* part : {&up_e, &low_e, &path_e}) es.insert(es.end(), part->begin(), part->end());
  return make_graph(n, es);
}

Graph gen_dmdp_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 1 && m >= n, "dmdp needs n >= 1 and m >= n");
  Rng rng(seed);
  EdgeList es;
  auto gain = [&] { return rand_rational(rng, 1, 7, 8); };
  auto fix = [](Rational g) { return g >= 1 ? Rational(1, 2) : g; };
  for (std::size_t u = 0; u < n; ++u) {
    es.emplace_back(static_cast<Vertex>(u), rand_vertex(rng, n), rand_rational(rng, -8, 8, 4), fix(gain()));
  }
  while (es.size() < m) {
    es.emplace_back(rand_vertex(rng, n), rand_vertex(rng, n), rand_rational(rng, -8, 8, 4), fix(gain()));
  }
  return make_graph(n, es, InstanceKind::Dmdp);
}

UniformInstance gen_dapsp_random(std::size_t n, std::size_t m, const Rational& gamma, std::uint64_t seed,
                                 int cost_bound) {
  require(n >= 1, "n must be positive");
  require(m <= n * n, "a simple digraph has at most n^2 edges");
  Rng rng(seed);
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<std::tuple<Vertex, Vertex, Rational>> es;
  while (es.size() < m) {
    Vertex u = rand_vertex(rng, n), v = rand_vertex(rng, n);
    if (!used.insert({u, v}).second) continue;
    es.emplace_back(u, v, Rational(uniform(rng, -cost_bound, cost_bound)));
  }
  return make_uniform(n, es, gamma);
}

Graph generate(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  if (kind == "feasible-random") return gen_feasible_random(n, m, seed);
  if (kind == "planted-long-cycle") return gen_planted_long_cycle(n, m, std::max<std::size_t>(1, n / 2 + 1), seed);
  if (kind == "infeasible-bicycle") return gen_infeasible_bicycle(n, m, seed);
  if (kind == "dmdp-random") return gen_dmdp_random(n, m, seed);
  if (kind == "dapsp-random") return gen_dapsp_random(n, m, Rational(1, 2), seed).graph;
  if (kind == "random") return gen_random(n, m, seed);
  throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace m2vpi
