#include "m2vpi/certificate.hpp"

#include <sstream>

namespace m2vpi {

bool verify_certificate(const Graph& g, const Certificate& cert) {
  if (cert.kind == Certificate::Kind::NegUnitGain) {
    const Walk& c = cert.cycle;
    if (c.length() == 0 || !c.closed() || !validate_walk(g, c)) return false;
    return c.summary.gain == 1 && sgn(c.summary.cost) < 0;
  }
  const Walk &le = cert.c_le, &ge = cert.c_ge, &p = cert.path;
  for (const Walk* w : {&le, &ge, &p}) {
    if (!validate_walk(g, *w)) return false;
  }
  if (le.length() == 0 || ge.length() == 0 || !le.closed() || !ge.closed()) return false;
  if (p.from != ge.from || p.to != le.from) return false;
  if (!(le.summary.gain < 1) || !(ge.summary.gain > 1)) return false;
  const Rational phi_le = le.summary.cost / (1 - le.summary.gain);
  const Rational phi_ge = ge.summary.cost / (1 - ge.summary.gain);
  return phi_ge > p.summary.cost + p.summary.gain * phi_le;
}

namespace {
void put_walk(std::ostringstream& os, const char* label, const Walk& w) {
  os << label;
  for (EdgeId e : w.edges) os << ' ' << (e + 1);
  os << '\n';
}
}  // namespace

std::string format_certificate(const Certificate& cert) {
  std::ostringstream os;
  if (cert.kind == Certificate::Kind::NegUnitGain) {
    os << "cert neg-unit-gain\n";
    put_walk(os, "cycle", cert.cycle);
  } else {
    os << "cert bicycle\n";
    put_walk(os, "upper", cert.c_le);
    put_walk(os, "lower", cert.c_ge);
    os << "path-from " << (cert.path.from + 1) << '\n';
    put_walk(os, "path", cert.path);
  }
  return os.str();
}

}  // namespace m2vpi
