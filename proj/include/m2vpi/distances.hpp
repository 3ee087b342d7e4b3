#pragma once

#include <cstddef>
#include <limits>
#include <tuple>
#include <vector>

#include "m2vpi/graph.hpp"
#include "m2vpi/rational.hpp"

namespace m2vpi {

/// Simple digraph with a single discount factor. Edge gains of `graph` are
/// all equal to `gamma`.
struct UniformInstance {
  Graph graph;
  Rational gamma;
};

/// Builds a uniform instance from (u, v, c) triples. Throws
/// std::invalid_argument on a multi-edge or gamma outside (0, 1).
UniformInstance make_uniform(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Rational>>& edges,
                             const Rational& gamma);

/// Numeric traits for the exact and the floating-point distance modes.
template <class T>
struct DistTraits;

template <>
struct DistTraits<ExtRational> {
  static ExtRational inf() { return ExtRational::pos_inf(); }
  static ExtRational zero() { return ExtRational(0); }
  static ExtRational from(const Rational& r) { return ExtRational(r); }
  static bool is_inf(const ExtRational& x) { return x.is_pos_inf(); }
  /// c + g * x with x finite.
  static ExtRational affine(const ExtRational& c, const ExtRational& g, const ExtRational& x) {
    return ExtRational(Rational(c.value() + g.value() * x.value()));
  }
  static ExtRational add(const ExtRational& a, const ExtRational& b) { return a + b; }
  static ExtRational mul(const ExtRational& a, const ExtRational& b) { return ExtRational(Rational(a.value() * b.value())); }
  static bool less(const ExtRational& a, const ExtRational& b) { return a < b; }
  static bool equal(const ExtRational& a, const ExtRational& b) { return a == b; }
};

template <>
struct DistTraits<double> {
  static double inf() { return std::numeric_limits<double>::infinity(); }
  static double zero() { return 0.0; }
  static double from(const Rational& r) { return r.get_d(); }
  static bool is_inf(double x) { return x == inf(); }
  static double affine(double c, double g, double x) { return c + g * x; }
  static double add(double a, double b) { return a + b; }
  static double mul(double a, double b) { return a * b; }
  /// Comparisons are plain; tolerances belong to the checks, not the DPs.
  static bool less(double a, double b) { return a < b; }
  static bool equal(double a, double b) { return a == b; }
};

/// Row-major n x n matrix of discounted distances; +inf when unreachable.
template <class T>
struct DiscountedDistances {
  std::size_t n = 0;
  std::vector<T> d;

  DiscountedDistances() = default;
  explicit DiscountedDistances(std::size_t n_) : n(n_), d(n_ * n_, DistTraits<T>::inf()) {}
  T& at(Vertex s, Vertex t) { return d[static_cast<std::size_t>(s) * n + t]; }
  const T& at(Vertex s, Vertex t) const { return d[static_cast<std::size_t>(s) * n + t]; }
};

using ExactDistances = DiscountedDistances<ExtRational>;
using FloatDistances = DiscountedDistances<double>;

}  // namespace m2vpi
