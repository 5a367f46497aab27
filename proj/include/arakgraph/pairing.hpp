#pragma once

// Compactified divisors D + f on a polarized metrized graph and Zhang's
// admissible intersection pairing, at the level of the graph coefficient.

#include <optional>

#include "arakgraph/admissible.hpp"

namespace arakgraph {

struct CompactifiedDivisor {
  VertexDivisor divisor;
  PiecewiseQuadratic potential;

  static CompactifiedDivisor zero(const WeightedMultigraph& g) {
    return {VertexDivisor(g.vertex_count()), PiecewiseQuadratic::constant(g, Rational(0))};
  }

  CompactifiedDivisor& operator+=(const CompactifiedDivisor& o) {
    divisor += o.divisor;
    potential += o.potential;
    return *this;
  }
  CompactifiedDivisor& operator-=(const CompactifiedDivisor& o) {
    divisor -= o.divisor;
    potential -= o.potential;
    return *this;
  }
  CompactifiedDivisor& operator*=(const Rational& s) {
    divisor *= s;
    potential *= s;
    return *this;
  }
  friend CompactifiedDivisor operator+(CompactifiedDivisor a, const CompactifiedDivisor& b) {
    return a += b;
  }
  friend CompactifiedDivisor operator-(CompactifiedDivisor a, const CompactifiedDivisor& b) {
    return a -= b;
  }
  friend CompactifiedDivisor operator*(const Rational& s, CompactifiedDivisor a) { return a *= s; }
  friend bool operator==(const CompactifiedDivisor&, const CompactifiedDivisor&) = default;
};

enum class BundleKind { Point, Dualizing, Generic };

/// A compactified divisor whose curvature is a multiple of the admissible
/// measure.
struct AdmissibleBundle {
  CompactifiedDivisor base;
  BundleKind kind = BundleKind::Generic;
  std::optional<VertexId> point;
};

/// (D + f, E + g) = g(D) + f(E) - int g Delta f.
inline Rational intersection(const PolarizedMetrizedGraph& p, const CompactifiedDivisor& a,
                             const CompactifiedDivisor& b) {
  const Current delta_f = laplacian_of(p.graph(), a.potential);
  return b.potential(a.divisor) + a.potential(b.divisor) -
         integrate(p.graph(), b.potential, delta_f);
}

inline Rational intersection(const PolarizedMetrizedGraph& p, const AdmissibleBundle& a,
                             const AdmissibleBundle& b) {
  return intersection(p, a.base, b.base);
}

/// delta_D - Delta f.
inline Current curvature(const PolarizedMetrizedGraph& p, const CompactifiedDivisor& a) {
  return Current::divisor(p.model(), a.divisor) - laplacian_of(p.graph(), a.potential);
}

/// D + c + g(D, .).
inline AdmissibleBundle admissible_bundle(const PolarizedMetrizedGraph& p, const VertexDivisor& d,
                                          const Rational& c = 0) {
  return {{d, green_function(p, d) + c}, BundleKind::Generic, std::nullopt};
}

/// O(P)_a for a section specializing to x.
inline AdmissibleBundle admissible_of_point(const PolarizedMetrizedGraph& p, VertexId x) {
  if (x >= p.model().vertex_count()) {
    throw Error(ErrorKind::UnknownPoint, "vertex index out of range");
  }
  const VertexDivisor d = VertexDivisor::point(p.model().vertex_count(), x);
  return {{d, green_function(p, Point::at_vertex(x))}, BundleKind::Point, x};
}

/// omega_a = K + c(Gamma, K) + g(K, .).
inline AdmissibleBundle omega_a(const PolarizedMetrizedGraph& p) {
  return {{p.k(), green_function(p, p.k()) + c_constant(p)}, BundleKind::Dualizing, std::nullopt};
}

inline AdmissibleBundle tensor(const AdmissibleBundle& a, const AdmissibleBundle& b) {
  return {a.base + b.base, BundleKind::Generic, std::nullopt};
}

}  // namespace arakgraph
