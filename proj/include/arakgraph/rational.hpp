#pragma once

// Exact rational scalars.
//
// Every quantity in the library (edge lengths, resistances, masses, the
// invariants) is an arbitrary-precision rational in lowest terms. GMP's
// mpq_class keeps results of arithmetic canonical; values built from a
// numerator/denominator pair go through `rational()` which canonicalizes.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arakgraph/error.hpp"

namespace arakgraph {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p", "-p" or "p/q" (decimal digits only, no whitespace).
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorKind::ParseError,
                "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  return rational(Integer(n), Integer(std::string(den)));
}

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Decimal rendering rounded half away from zero to `digits` places.
inline std::string to_decimal(const Rational& q, int digits) {
  digits = std::max(digits, 0);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer num = abs(q.get_num()) * scale * 2 + q.get_den();
  Integer den = q.get_den() * 2;
  Integer scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  bool negative = sgn(q) < 0 && scaled != 0;
  return negative ? "-" + body : body;
}

/// A rational or +infinity. Infinity only arises as the resistance across a
/// bridge once the bridge itself is removed.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}

  static ExtendedRational infinity() { return ExtendedRational(Infinite{}); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw std::logic_error("ExtendedRational: value of +infinity");
    return *value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
    return os << (x.is_infinite() ? std::string("inf") : to_string(x.value()));
  }

 private:
  struct Infinite {};
  explicit ExtendedRational(Infinite) : value_(std::nullopt) {}

  std::optional<Rational> value_ = Rational(0);
};

}  // namespace arakgraph
