#pragma once

// Univariate rational polynomials and piecewise polynomials on an interval.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "arakgraph/rational.hpp"

namespace arakgraph {

/// Dense polynomial, coefficients from the constant term up. Trailing zeros
/// are trimmed so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coefficient(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& s) const {
    Rational value = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * s + *it;
    return value;
  }

  Polynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  /// Definite integral over [a, b].
  Rational integral(const Rational& a, const Rational& b) const {
    Rational fb = 0, fa = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Rational c = coeffs_[k] / static_cast<long>(k + 1);
      fb = (fb + c) * b;
      fa = (fa + c) * a;
    }
    return fb - fa;
  }

  /// s -> p(s + c).
  Polynomial shifted(const Rational& c) const {
    // Horner in the shifted variable.
    Polynomial result;
    const Polynomial linear({c, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      result = result * linear + Polynomial::constant(*it);
    }
    return result;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    for (Rational& c : coeffs_) c *= s;
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// A function on [0, length] given by one polynomial per piece. Pieces are
/// separated by strictly increasing break points inside (0, length); every
/// polynomial is written in the global coordinate s, not a piece-local one.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(Rational length, Polynomial p)
      : length_(std::move(length)), pieces_{std::move(p)} {}
  PiecewisePolynomial(Rational length, std::vector<Rational> breaks,
                      std::vector<Polynomial> pieces)
      : length_(std::move(length)), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breaks_.size() + 1) {
      throw std::invalid_argument("PiecewisePolynomial: piece/break count mismatch");
    }
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const Rational& lo = i == 0 ? Rational(0) : breaks_[i - 1];
      if (!(breaks_[i] > lo) || !(breaks_[i] < length_)) {
        throw std::invalid_argument("PiecewisePolynomial: break points out of order");
      }
    }
  }

  const Rational& length() const { return length_; }
  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }

  Rational piece_start(std::size_t i) const { return i == 0 ? Rational(0) : breaks_[i - 1]; }
  Rational piece_end(std::size_t i) const { return i == breaks_.size() ? length_ : breaks_[i]; }

  int degree() const {
    int d = -1;
    for (const Polynomial& p : pieces_) d = std::max(d, p.degree());
    return d;
  }

  /// Index of the piece whose closed interval contains s, preferring the
  /// piece to the right at a break point.
  std::size_t piece_at(const Rational& s) const {
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), s) -
                                    breaks_.begin());
  }

  Rational operator()(const Rational& s) const { return pieces_[piece_at(s)](s); }

  /// Limits from the left and from the right.
  Rational left_value(const Rational& s) const {
    std::size_t i = piece_at(s);
    if (i > 0 && breaks_[i - 1] == s) --i;
    return pieces_[i](s);
  }
  Rational right_value(const Rational& s) const { return pieces_[piece_at(s)](s); }

  PiecewisePolynomial derivative() const {
    std::vector<Polynomial> d;
    d.reserve(pieces_.size());
    for (const Polynomial& p : pieces_) d.push_back(p.derivative());
    return PiecewisePolynomial(length_, breaks_, std::move(d));
  }

  Rational integral() const {
    Rational total = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      total += pieces_[i].integral(piece_start(i), piece_end(i));
    }
    return total;
  }

  /// Same function, re-expressed over the union of both break sets.
  PiecewisePolynomial refined(const std::vector<Rational>& extra) const {
    std::vector<Rational> all = breaks_;
    for (const Rational& b : extra) {
      if (sgn(b) > 0 && b < length_) all.push_back(b);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Polynomial> pieces;
    pieces.reserve(all.size() + 1);
    for (std::size_t i = 0; i <= all.size(); ++i) {
      const Rational lo = i == 0 ? Rational(0) : all[i - 1];
      pieces.push_back(pieces_[piece_at(lo)]);
    }
    return PiecewisePolynomial(length_, std::move(all), std::move(pieces));
  }

  /// Merges neighbouring pieces that carry the same polynomial.
  PiecewisePolynomial canonical() const {
    std::vector<Rational> breaks;
    std::vector<Polynomial> pieces{pieces_.front()};
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (pieces_[i + 1] == pieces.back()) continue;
      breaks.push_back(breaks_[i]);
      pieces.push_back(pieces_[i + 1]);
    }
    return PiecewisePolynomial(length_, std::move(breaks), std::move(pieces));
  }

  template <class Op>
  friend PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b,
                                     Op op) {
    PiecewisePolynomial ra = a.refined(b.breaks_);
    PiecewisePolynomial rb = b.refined(a.breaks_);
    std::vector<Polynomial> pieces;
    pieces.reserve(ra.pieces_.size());
    for (std::size_t i = 0; i < ra.pieces_.size(); ++i) {
      pieces.push_back(op(ra.pieces_[i], rb.pieces_[i]));
    }
    return PiecewisePolynomial(a.length_, ra.breaks_, std::move(pieces)).canonical();
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& p, const Polynomial& q) { return p + q; });
  }
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& p, const Polynomial& q) { return p - q; });
  }
  friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& p, const Polynomial& q) { return p * q; });
  }
  friend PiecewisePolynomial operator*(const Rational& s, PiecewisePolynomial a) {
    for (Polynomial& p : a.pieces_) p *= s;
    return a.canonical();
  }

  /// Structural equality of the canonical forms.
  friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    PiecewisePolynomial ca = a.canonical();
    PiecewisePolynomial cb = b.canonical();
    return ca.length_ == cb.length_ && ca.breaks_ == cb.breaks_ && ca.pieces_ == cb.pieces_;
  }

 private:
  Rational length_ = 0;
  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_{Polynomial()};
};

}  // namespace arakgraph
