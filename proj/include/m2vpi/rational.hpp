#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace m2vpi {

/// Exact rational number. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q" or "p" with optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_canonical(const Rational& q) {
  if (sgn(q.get_den()) <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return g == 1;
}

/// Rational extended with +inf and -inf.
class ExtRational {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtRational() : kind_(Kind::Finite) {}
  ExtRational(const Rational& v) : kind_(Kind::Finite), val_(v) {}  // NOLINT
  ExtRational(Rational&& v) : kind_(Kind::Finite), val_(std::move(v)) {}  // NOLINT
  ExtRational(long v) : kind_(Kind::Finite), val_(v) {}  // NOLINT
  ExtRational(int v) : kind_(Kind::Finite), val_(v) {}  // NOLINT

  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  Kind kind() const { return kind_; }
  /// Makes the value finite, reusing the existing storage.
  void set_finite(const Rational& v) {
    kind_ = Kind::Finite;
    val_ = v;
  }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Finite value. Throws std::logic_error on an infinity.
  const Rational& value() const {
    if (kind_ != Kind::Finite) throw std::logic_error("ExtRational::value on infinity");
    return val_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Finite || a.val_ == b.val_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    int c = cmp(a.val_, b.val_);
    return c <=> 0;
  }

  /// inf - inf is a program error and throws std::logic_error.
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
  ExtRational operator-() const;

  /// Scaling by a strictly positive rational; inf stays inf.
  friend ExtRational operator*(const Rational& g, const ExtRational& a);
  friend ExtRational operator/(const ExtRational& a, const Rational& g);

 private:
  explicit ExtRational(Kind k) : kind_(k) {}

  Kind kind_;
  Rational val_;
};

/// c + g * y for g > 0, the basic relaxation of an edge.
ExtRational affine(const Rational& c, const Rational& g, const ExtRational& y);

std::string to_string(const ExtRational& x);
std::ostream& operator<<(std::ostream& os, const ExtRational& x);

/// Parses a rational or "inf"/"+inf"/"-inf".
ExtRational parse_ext_rational(std::string_view text);

}  // namespace m2vpi
