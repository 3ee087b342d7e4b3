#pragma once

#include <string>

#include "m2vpi/graph.hpp"
#include "m2vpi/walk.hpp"

namespace m2vpi {

/// Infeasibility certificate. NegUnitGain uses `cycle` only. NegBicycle uses
/// c_le (closed at t, gain < 1), c_ge (closed at s, gain > 1) and `path`
/// (s -> t) with phi(c_ge) > c(path) + g(path) phi(c_le).
struct Certificate {
  enum class Kind { NegUnitGain, NegBicycle };
  Kind kind = Kind::NegUnitGain;
  Walk cycle;
  Walk c_le;
  Walk c_ge;
  Walk path;

  static Certificate neg_unit_gain(Walk c) {
    Certificate r;
    r.kind = Kind::NegUnitGain;
    r.cycle = std::move(c);
    return r;
  }
  static Certificate bicycle(Walk le, Walk ge, Walk p) {
    Certificate r;
    r.kind = Kind::NegBicycle;
    r.c_le = std::move(le);
    r.c_ge = std::move(ge);
    r.path = std::move(p);
    return r;
  }
};

/// Exact check of the defining inequality after re-validating every walk.
bool verify_certificate(const Graph& g, const Certificate& cert);

/// `cert neg-unit-gain` or `cert bicycle` followed by one line per walk
/// listing 1-indexed edge ids.
std::string format_certificate(const Certificate& cert);

}  // namespace m2vpi
