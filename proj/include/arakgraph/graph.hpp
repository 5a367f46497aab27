#pragma once

// Weighted multigraphs, the discrete Laplacian and its pseudo-inverse.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arakgraph/error.hpp"
#include "arakgraph/rational.hpp"

namespace arakgraph {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  std::string name;
  VertexId minus;  // e^-
  VertexId plus;   // e^+
  Rational length;

  bool is_loop() const { return minus == plus; }
};

/// Raw, unvalidated vertex and edge lists as read from a document.
struct GraphSpec {
  struct EdgeSpec {
    std::string id;
    std::string from;
    std::string to;
    Rational length;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

/// Dense square-or-rectangular matrix of rationals, row major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Solves A X = B by Gauss-Jordan elimination. A must be nonsingular.
inline RationalMatrix solve(RationalMatrix a, RationalMatrix b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::logic_error("solve: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(b(pivot, c), b(col, c));
    }
    const Rational inv = 1 / a(col, col);
    for (std::size_t c = col; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < m; ++c) b(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      for (std::size_t c = 0; c < m; ++c) b(r, c) -= factor * b(col, c);
    }
  }
  return b;
}

inline Rational determinant(RationalMatrix a) {
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

}  // namespace detail

/// Finite connected multigraph with positive rational edge lengths. Loops and
/// parallel edges are allowed. Vertex and edge order is declaration order.
class WeightedMultigraph {
 public:
  /// Validating constructor over index-based edges.
  WeightedMultigraph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
      : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
    if (vertex_names_.empty()) {
      throw Error(ErrorKind::DisconnectedGraph, "graph has no vertices");
    }
    for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
      if (!vertex_index_.emplace(vertex_names_[v], v).second) {
        throw Error(ErrorKind::DuplicateId, "vertex '" + vertex_names_[v] + "'");
      }
    }
    detail::DisjointSets sets(vertex_names_.size());
    std::size_t components = vertex_names_.size();
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      if (edge.minus >= vertex_names_.size() || edge.plus >= vertex_names_.size()) {
        throw Error(ErrorKind::DanglingEndpoint, "edge '" + edge.name + "'");
      }
      if (sgn(edge.length) <= 0) {
        throw Error(ErrorKind::NonPositiveLength,
                    "edge '" + edge.name + "' has length " + to_string(edge.length));
      }
      if (!edge_index_.emplace(edge.name, e).second) {
        throw Error(ErrorKind::DuplicateId, "edge '" + edge.name + "'");
      }
      if (sets.unite(edge.minus, edge.plus)) --components;
    }
    if (components != 1) {
      throw Error(ErrorKind::DisconnectedGraph,
                  std::to_string(components) + " connected components");
    }
  }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Number of emanating directions; a loop counts twice.
  std::size_t valence(VertexId v) const {
    std::size_t n = 0;
    for (const Edge& e : edges_) n += (e.minus == v) + (e.plus == v);
    return n;
  }

  /// Sum of edge lengths.
  Rational volume() const {
    Rational total = 0;
    for (const Edge& e : edges_) total += e.length;
    return total;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Builds a graph from named vertex and edge lists.
inline WeightedMultigraph build_graph(const GraphSpec& spec) {
  std::unordered_map<std::string, VertexId> index;
  for (std::size_t v = 0; v < spec.vertices.size(); ++v) {
    if (!index.emplace(spec.vertices[v], v).second) {
      throw Error(ErrorKind::DuplicateId, "vertex '" + spec.vertices[v] + "'");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    auto from = index.find(e.from);
    auto to = index.find(e.to);
    if (from == index.end() || to == index.end()) {
      throw Error(ErrorKind::DanglingEndpoint,
                  "edge '" + e.id + "' references an undeclared vertex");
    }
    edges.push_back(Edge{e.id, from->second, to->second, e.length});
  }
  return WeightedMultigraph(spec.vertices, std::move(edges));
}

/// Divisor on the vertex set, stored densely.
class VertexDivisor {
 public:
  VertexDivisor() = default;
  explicit VertexDivisor(std::size_t vertex_count) : coeffs_(vertex_count, Rational(0)) {}
  explicit VertexDivisor(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  static VertexDivisor point(std::size_t vertex_count, VertexId x) {
    VertexDivisor d(vertex_count);
    d[x] = 1;
    return d;
  }

  std::size_t size() const { return coeffs_.size(); }
  Rational& operator[](VertexId v) { return coeffs_.at(v); }
  const Rational& operator[](VertexId v) const { return coeffs_.at(v); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational degree() const {
    Rational d = 0;
    for (const Rational& c : coeffs_) d += c;
    return d;
  }

  VertexDivisor& operator+=(const VertexDivisor& o) {
    for (std::size_t v = 0; v < coeffs_.size(); ++v) coeffs_[v] += o.coeffs_.at(v);
    return *this;
  }
  VertexDivisor& operator-=(const VertexDivisor& o) {
    for (std::size_t v = 0; v < coeffs_.size(); ++v) coeffs_[v] -= o.coeffs_.at(v);
    return *this;
  }
  VertexDivisor& operator*=(const Rational& s) {
    for (Rational& c : coeffs_) c *= s;
    return *this;
  }
  friend VertexDivisor operator+(VertexDivisor a, const VertexDivisor& b) { return a += b; }
  friend VertexDivisor operator-(VertexDivisor a, const VertexDivisor& b) { return a -= b; }
  friend VertexDivisor operator*(const Rational& s, VertexDivisor a) { return a *= s; }
  friend bool operator==(const VertexDivisor&, const VertexDivisor&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// L = d^* d_*: diagonal entries sum conductances 1/l(e) of incident non-loop
/// edges, off-diagonal (x,y) is minus the conductance between x and y.
inline RationalMatrix laplacian(const WeightedMultigraph& g) {
  RationalMatrix l(g.vertex_count(), g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const Rational c = 1 / e.length;
    l(e.minus, e.minus) += c;
    l(e.plus, e.plus) += c;
    l(e.minus, e.plus) -= c;
    l(e.plus, e.minus) -= c;
  }
  return l;
}

namespace detail {

// L + J is nonsingular on a connected graph, and (L + J) u = b with sum(b) = 0
// forces sum(u) = 0 and L u = b.
inline RationalMatrix grounded_laplacian(const WeightedMultigraph& g) {
  RationalMatrix a = laplacian(g);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) += 1;
  return a;
}

}  // namespace detail

/// One entry of the pseudo-inverse L^+, via the solve
/// L u = delta_x - (1/|V|) 1, sum(u) = 0.
inline Rational green_pseudoinverse(const WeightedMultigraph& g, VertexId x, VertexId y) {
  const std::size_t n = g.vertex_count();
  RationalMatrix rhs(n, 1);
  const Rational mean = rational(1, static_cast<long>(n));
  for (std::size_t v = 0; v < n; ++v) rhs(v, 0) = (v == x ? Rational(1) : Rational(0)) - mean;
  RationalMatrix u = detail::solve(detail::grounded_laplacian(g), std::move(rhs));
  return u(y, 0);
}

/// The whole pseudo-inverse L^+ at once.
inline RationalMatrix pseudoinverse(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  RationalMatrix rhs(n, n);
  const Rational mean = rational(1, static_cast<long>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rhs(r, c) = (r == c ? Rational(1) : Rational(0)) - mean;
  return detail::solve(detail::grounded_laplacian(g), std::move(rhs));
}

/// sum_{x,y} D(x) E(y) L^+(x,y).
inline Rational green_bilinear(const RationalMatrix& pinv, const VertexDivisor& d,
                               const VertexDivisor& e) {
  Rational total = 0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (d[x] == 0) continue;
    for (std::size_t y = 0; y < e.size(); ++y) {
      if (e[y] != 0) total += d[x] * e[y] * pinv(x, y);
    }
  }
  return total;
}

inline Rational green_bilinear(const WeightedMultigraph& g, const VertexDivisor& d,
                               const VertexDivisor& e) {
  return green_bilinear(pseudoinverse(g), d, e);
}

/// r(x,y) = g(x - y, x - y) read off a precomputed pseudo-inverse.
inline Rational resistance_from_pseudoinverse(const RationalMatrix& pinv, VertexId x,
                                              VertexId y) {
  return pinv(x, x) + pinv(y, y) - 2 * pinv(x, y);
}

inline Rational effective_resistance_vertices(const WeightedMultigraph& g, VertexId x,
                                              VertexId y) {
  if (x == y) return 0;
  const std::size_t n = g.vertex_count();
  RationalMatrix rhs(n, 1);
  rhs(x, 0) = 1;
  rhs(y, 0) = -1;
  RationalMatrix u = detail::solve(detail::grounded_laplacian(g), std::move(rhs));
  return u(x, 0) - u(y, 0);
}

/// First Betti number |E| - |V| + 1 of a connected graph.
inline std::size_t betti_number(const WeightedMultigraph& g) {
  return g.edge_count() + 1 - g.vertex_count();
}

/// Sum over spanning trees of the product of conductances, as the cofactor
/// obtained by deleting the first row and column of L.
inline Rational weighted_tree_count(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  RationalMatrix l = laplacian(g);
  RationalMatrix minor(n - 1, n - 1);
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 1; c < n; ++c) minor(r - 1, c - 1) = l(r, c);
  return detail::determinant(std::move(minor));
}

/// Whether x and y remain connected once edge `removed` is deleted.
inline bool connected_without(const WeightedMultigraph& g, EdgeId removed, VertexId x,
                              VertexId y) {
  detail::DisjointSets sets(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e != removed) sets.unite(g.edge(e).minus, g.edge(e).plus);
  }
  return sets.find(x) == sets.find(y);
}

}  // namespace arakgraph
