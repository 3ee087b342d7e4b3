#include "m2vpi/rational.hpp"

#include <cctype>

namespace m2vpi {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class p(std::string(num), 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) q = mpz_class(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  using K = ExtRational::Kind;
  if (a.kind_ == K::Finite && b.kind_ == K::Finite) return ExtRational(Rational(a.val_ + b.val_));
  if ((a.kind_ == K::PosInf && b.kind_ == K::NegInf) || (a.kind_ == K::NegInf && b.kind_ == K::PosInf))
    throw std::logic_error("inf - inf");
  return ExtRational(a.kind_ != K::Finite ? a.kind_ : b.kind_);
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational ExtRational::operator-() const {
  switch (kind_) {
    case Kind::PosInf: return neg_inf();
    case Kind::NegInf: return pos_inf();
    default: return ExtRational(Rational(-val_));
  }
}

ExtRational operator*(const Rational& g, const ExtRational& a) {
  if (sgn(g) <= 0) throw std::logic_error("ExtRational scaled by non-positive factor");
  if (!a.is_finite()) return a;
  return ExtRational(Rational(g * a.val_));
}

ExtRational operator/(const ExtRational& a, const Rational& g) {
  if (sgn(g) <= 0) throw std::logic_error("ExtRational divided by non-positive factor");
  if (!a.is_finite()) return a;
  return ExtRational(Rational(a.val_ / g));
}

ExtRational affine(const Rational& c, const Rational& g, const ExtRational& y) {
  if (!y.is_finite()) return y;
  return ExtRational(Rational(c + g * y.value()));
}

std::string to_string(const ExtRational& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return to_string(x.value());
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << to_string(x); }

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtRational::pos_inf();
  if (text == "-inf") return ExtRational::neg_inf();
  return ExtRational(parse_rational(text));
}

}  // namespace m2vpi
