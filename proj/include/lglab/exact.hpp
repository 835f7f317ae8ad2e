#pragma once

// Exact arithmetic on numbers of the form  q * pi + r  with q, r rational.
//
// Every angle that appears in the Cantor constructions is pi/2 plus a dyadic
// rational, and every angle of the non-uniqueness example is a rational
// multiple of pi, so this field is closed under everything we need (sums,
// differences, halving) while keeping equality and ordering decidable.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <numbers>
#include <string>
#include <string_view>

namespace lglab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational from a double (doubles are dyadic, so this never rounds).
Rational rational_from_double(double x);

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& r);

/// Parses "p/q", "p", "-p/q"; throws ParseError.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// pi_coeff * pi + offset.
class PiRational {
 public:
  PiRational() = default;
  PiRational(Rational pi_coeff, Rational offset)
      : pi_coeff_(std::move(pi_coeff)), offset_(std::move(offset)) {}

  static PiRational rational(Rational r) { return {Rational(0), std::move(r)}; }
  static PiRational pi_multiple(Rational q) { return {std::move(q), Rational(0)}; }
  static PiRational two_pi() { return {Rational(2), Rational(0)}; }

  const Rational& pi_coeff() const { return pi_coeff_; }
  const Rational& offset() const { return offset_; }

  double to_double() const {
    return lglab::to_double(pi_coeff_) * std::numbers::pi + lglab::to_double(offset_);
  }

  /// Exact sign; throws std::runtime_error only if |q*pi + r| < 1e-60, which
  /// cannot happen for nonzero values with denominators below ~2^100.
  int sign() const;

  bool is_zero() const { return pi_coeff_ == 0 && offset_ == 0; }

  PiRational operator-() const { return {-pi_coeff_, -offset_}; }
  PiRational& operator+=(const PiRational& o) {
    pi_coeff_ += o.pi_coeff_;
    offset_ += o.offset_;
    return *this;
  }
  PiRational& operator-=(const PiRational& o) {
    pi_coeff_ -= o.pi_coeff_;
    offset_ -= o.offset_;
    return *this;
  }
  PiRational& operator*=(const Rational& s) {
    pi_coeff_ *= s;
    offset_ *= s;
    return *this;
  }
  friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
  friend PiRational operator-(PiRational a, const PiRational& b) { return a -= b; }
  friend PiRational operator*(PiRational a, const Rational& s) { return a *= s; }
  friend PiRational operator*(const Rational& s, PiRational a) { return a *= s; }

  friend bool operator==(const PiRational& a, const PiRational& b) {
    return a.pi_coeff_ == b.pi_coeff_ && a.offset_ == b.offset_;
  }
  friend std::strong_ordering operator<=>(const PiRational& a, const PiRational& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Textual form: a sum of terms "r" and "qpi", e.g. "-1/2", "1/4pi", "3/8-1/2pi".
  std::string to_string() const;
  /// Inverse of to_string; also accepts "pi", "-pi", "q*pi" and whitespace.
  static PiRational parse(std::string_view text);

 private:
  Rational pi_coeff_{0};
  Rational offset_{0};
};

}  // namespace lglab
