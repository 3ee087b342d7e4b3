#include "m2vpi/graph.hpp"

#include <sstream>
#include <tuple>

namespace m2vpi {

Graph::Graph(std::size_t n, std::vector<Edge> edges, InstanceKind kind)
    : n_(n), kind_(kind), edges_(std::move(edges)), out_(n), in_(n) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    e.id = static_cast<EdgeId>(i);
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (sgn(e.g) <= 0) throw std::invalid_argument("edge gain must be positive");
    if (kind_ == InstanceKind::Dmdp && e.g >= 1) throw std::invalid_argument("dmdp edge gain must be below 1");
    out_[e.u].push_back(e.id);
    in_[e.v].push_back(e.id);
  }
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_ || a.kind_ != b.kind_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.c != y.c || x.g != y.g) return false;
  }
  return true;
}

Graph make_graph(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Rational, Rational>>& edges,
                 InstanceKind kind) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v, c, g] : edges) es.push_back(Edge{0, u, v, c, g});
  return Graph(n, std::move(es), kind);
}

Graph reverse_instance(const Graph& g) {
  std::vector<Edge> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.push_back(Edge{e.id, e.v, e.u, Rational(e.c / e.g), Rational(1 / e.g)});
  return Graph(g.n(), std::move(es));
}

Graph zero_cost_instance(const Graph& g) {
  std::vector<Edge> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.push_back(Edge{e.id, e.u, e.v, Rational(0), e.g});
  return Graph(g.n(), std::move(es));
}

Graph reciprocal_gain_instance(const Graph& g) {
  std::vector<Edge> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.push_back(Edge{e.id, e.u, e.v, Rational(0), Rational(1 / e.g)});
  return Graph(g.n(), std::move(es));
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  }
}

}  // namespace

Graph parse_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  InstanceKind kind = InstanceKind::M2vpi;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 3 || (toks[0] != "m2vpi" && toks[0] != "dmdp"))
        throw ParseError(lineno, "expected header 'm2vpi <n> <m>' or 'dmdp <n> <m>'");
      kind = toks[0] == "dmdp" ? InstanceKind::Dmdp : InstanceKind::M2vpi;
      n = parse_count(toks[1], lineno, "vertex count");
      m = parse_count(toks[2], lineno, "edge count");
      have_header = true;
      continue;
    }
    if (toks.size() != 4) throw ParseError(lineno, "expected '<u> <v> <c> <g>'");
    if (edges.size() == m) throw ParseError(lineno, "more edge lines than declared");
    std::size_t u = parse_count(toks[0], lineno, "vertex");
    std::size_t v = parse_count(toks[1], lineno, "vertex");
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex out of range");
    Rational c, g;
    try {
      c = parse_rational(toks[2]);
      g = parse_rational(toks[3]);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(lineno, ex.what());
    }
    if (sgn(g) <= 0) throw ParseError(lineno, "gain must be positive");
    if (kind == InstanceKind::Dmdp && g >= 1) throw ParseError(lineno, "dmdp gain must be below 1");
    edges.push_back(Edge{0, static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), c, g});
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (edges.size() != m) throw ParseError(lineno, "fewer edge lines than declared");
  return Graph(n, std::move(edges), kind);
}

Graph parse_instance_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

std::string print_instance(const Graph& g) {
  std::ostringstream os;
  os << (g.kind() == InstanceKind::Dmdp ? "dmdp " : "m2vpi ") << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges())
    os << e.u + 1 << ' ' << e.v + 1 << ' ' << to_string(e.c) << ' ' << to_string(e.g) << '\n';
  return os.str();
}

}  // namespace m2vpi
