#include "lglab/exact.hpp"

#include "lglab/errors.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lglab {
namespace {

// pi to 62 decimals; the true value lies in [kPiLow, kPiLow + 1e-62].
const Rational& pi_low() {
  static const Rational value(
      BigInt("314159265358979323846264338327950288419716939937510582097494459"),
      pow(BigInt(10), 62));
  return value;
}

const Rational& pi_high() {
  static const Rational value = pi_low() + Rational(BigInt(1), pow(BigInt(10), 62));
  return value;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite value");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r{BigInt(scaled)};
  const int shift = exponent - 53;
  if (shift >= 0) {
    r *= Rational(pow(BigInt(2), static_cast<unsigned>(shift)));
  } else {
    r /= Rational(pow(BigInt(2), static_cast<unsigned>(-shift)));
  }
  return r;
}

std::string to_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto read_int = [&](BigInt& out) {
    const std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == start) throw ParseError("expected digits in rational '" + std::string(text) + "'");
    out = BigInt(std::string(text.substr(start, pos - start)));
  };
  BigInt num;
  BigInt den{1};
  read_int(num);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    read_int(den);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  if (pos != text.size()) throw ParseError("trailing characters in rational '" + std::string(text) + "'");
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

int PiRational::sign() const {
  const int sa = sign_of(pi_coeff_);
  const int sb = sign_of(offset_);
  if (sa == 0) return sb;
  if (sb == 0 || sa == sb) return sa;
  // Opposite signs: compare |q| * pi with |r|.
  const Rational q = abs(pi_coeff_);
  const Rational r = abs(offset_);
  if (q * pi_low() > r) return sa;
  if (q * pi_high() < r) return sb;
  throw std::runtime_error("PiRational::sign: value within 1e-60 of zero");
}

std::string PiRational::to_string() const {
  if (pi_coeff_ == 0) return lglab::to_string(offset_);
  std::string pi_term;
  if (pi_coeff_ == 1) {
    pi_term = "pi";
  } else if (pi_coeff_ == -1) {
    pi_term = "-pi";
  } else {
    pi_term = lglab::to_string(pi_coeff_) + "pi";
  }
  if (offset_ == 0) return pi_term;
  return lglab::to_string(offset_) + (pi_coeff_ > 0 ? "+" : "") + pi_term;
}

PiRational PiRational::parse(std::string_view raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw ParseError("empty angle string");

  PiRational result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw ParseError("expected '+' or '-' in angle '" + text + "'");
    }
    // Coefficient "p" or "p/q" (optional when followed by "pi").
    std::size_t start = pos;
    while (pos < text.size() && (is_digit(text[pos]) || text[pos] == '/')) ++pos;
    Rational coeff{1};
    const bool has_number = pos > start;
    if (has_number) coeff = parse_rational(std::string_view(text).substr(start, pos - start));
    bool is_pi = false;
    if (pos < text.size() && text[pos] == '*') ++pos;
    if (text.compare(pos, 2, "pi") == 0) {
      is_pi = true;
      pos += 2;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        start = pos;
        while (pos < text.size() && is_digit(text[pos])) ++pos;
        if (pos == start) throw ParseError("bad divisor after pi in '" + text + "'");
        coeff /= Rational(BigInt(text.substr(start, pos - start)));
      }
    }
    if (!has_number && !is_pi) throw ParseError("bad term in angle '" + text + "'");
    if (negative) coeff = -coeff;
    if (is_pi) {
      result.pi_coeff_ += coeff;
    } else {
      result.offset_ += coeff;
    }
  }
  return result;
}

}  // namespace lglab
