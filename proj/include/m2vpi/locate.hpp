#pragma once

#include <optional>
#include <vector>

#include "m2vpi/bounds.hpp"
#include "m2vpi/certificate.hpp"
#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

/// Outcome of comparing xi with the closed walks through v of at most k
/// edges. Let (y, g) be the lex-min of (c(C) + g(C) xi, g(C)) over those
/// walks and the empty one.
enum class CycleCase {
  Below,            ///< y < xi, g < 1: a closed walk with phi < xi
  Above,            ///< y < xi, g > 1: a closed walk with gain > 1 and phi > xi
  StrictlyBetween,  ///< y = xi, g = 1: every lower bound <= xi < phi_{v,k}
  NegUnitGain,      ///< y < xi, g = 1
  Equal,            ///< y = xi, g < 1: phi_{v,k} = xi
};

const char* to_string(CycleCase c);

struct CycleLocateOutcome {
  CycleCase tag = CycleCase::StrictlyBetween;
  Vertex v = 0;
  std::size_t k = 0;
  Rational xi;
  Rational cost{0};  ///< c(C) of the lex-min closed walk C; 0 for StrictlyBetween
  Rational gain{1};  ///< g(C)

  /// phi of the located walk. Requires tag Below, Above or Equal.
  Rational phi() const;
  /// Re-derives the closed walk. Not available for StrictlyBetween.
  Walk witness(const Graph& g) const;
};

CycleLocateOutcome locate_cycle(const Graph& g, Vertex v, std::size_t k, const Rational& xi);

/// Phase j of the location recursion.
struct LocateState {
  BoundVector y;
  std::vector<std::optional<EdgeId>> parent;
  std::size_t phase = 0;
};

/// Phase 0: y = xi, no parents.
LocateState locate_initial(const Graph& g, const BoundVector& xi);

/// Phase j from phase j - 1. A vertex keeps its parent unless its value
/// strictly increases, and then takes the maximizing in-edge with the
/// largest id.
LocateState locate_phase(const Graph& g, const LocateState& prev);

/// (P, C) with g(C) < 1 and c(P) + g(P) phi(C) < xi at P's start.
struct LocateCertificate {
  Walk path;
  Walk cycle;
  Vertex source = 0;
  Rational threshold;
};

bool verify_locate_certificate(const Graph& g, const LocateCertificate& c);

struct GlobalLocateOutcome {
  enum class Kind { NoViolation, Violation, Infeasible };
  Kind kind = Kind::NoViolation;
  std::optional<LocateCertificate> certificate;
  std::optional<Certificate> infeasibility;
  std::size_t phases = 0;
};

/// Decides whether x^max_v < xi_v for some v. Entries of xi may be -inf but
/// not +inf.
GlobalLocateOutcome locate_global(const Graph& g, const BoundVector& xi);

enum class ValueAnswer { Below, NotBelow, Infeasible };

struct ValueLocateOutcome {
  ValueAnswer answer = ValueAnswer::NotBelow;
  std::optional<LocateCertificate> certificate;
  std::optional<Certificate> infeasibility;
};

/// x^max_t < xi, by locate_global with -inf everywhere except t.
ValueLocateOutcome locate_value(const Graph& g, Vertex t, const Rational& xi);

}  // namespace m2vpi
