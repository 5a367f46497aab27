#pragma once

// The metric realization of a weighted graph: points, the space of
// continuous piecewise-quadratic functions, currents, the Laplacian, the
// canonical measure and the tau / eta invariants.

#include <cassert>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arakgraph/graph.hpp"
#include "arakgraph/polynomial.hpp"

namespace arakgraph {

/// A vertex, or a position s in (0, l(e)) measured from e^- along edge e.
struct Point {
  enum class Kind { Vertex, Edge };

  Kind kind = Kind::Vertex;
  VertexId vertex = 0;
  EdgeId edge = 0;
  Rational s = 0;

  static Point at_vertex(VertexId v) { return Point{Kind::Vertex, v, 0, Rational(0)}; }

  /// Endpoint positions collapse to the corresponding vertex.
  static Point on_edge(const WeightedMultigraph& g, EdgeId e, const Rational& s) {
    const Edge& edge = g.edge(e);
    if (sgn(s) < 0 || s > edge.length) {
      throw Error(ErrorKind::UnknownPoint, "position " + to_string(s) + " outside edge '" +
                                               edge.name + "' of length " +
                                               to_string(edge.length));
    }
    if (s == 0) return at_vertex(edge.minus);
    if (s == edge.length) return at_vertex(edge.plus);
    return Point{Kind::Edge, 0, e, s};
  }

  bool is_vertex() const { return kind == Kind::Vertex; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.kind != b.kind) return false;
    return a.is_vertex() ? a.vertex == b.vertex : (a.edge == b.edge && a.s == b.s);
  }
};

inline std::string describe(const WeightedMultigraph& g, const Point& p) {
  if (p.is_vertex()) return g.vertex_name(p.vertex);
  return "edge:" + g.edge(p.edge).name + "@" + to_string(p.s);
}

/// Result of promoting points to vertices. Original vertices keep their ids;
/// new vertices are appended. Each new edge remembers the original edge it
/// lies on and its offset from that edge's e^-.
struct Subdivision {
  WeightedMultigraph graph;
  std::vector<VertexId> point_vertices;
  std::vector<std::pair<EdgeId, Rational>> edge_origin;
};

inline Subdivision subdivide(const WeightedMultigraph& g, const std::vector<Point>& points) {
  std::vector<std::map<Rational, VertexId>> cuts(g.edge_count());
  std::vector<std::string> names = g.vertex_names();
  for (const Point& p : points) {
    if (p.is_vertex()) continue;
    auto [it, inserted] = cuts[p.edge].emplace(p.s, 0);
    if (inserted) {
      it->second = names.size();
      names.push_back(g.edge(p.edge).name + "@" + to_string(p.s));
    }
  }
  std::vector<Edge> edges;
  std::vector<std::pair<EdgeId, Rational>> origin;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (cuts[e].empty()) {
      edges.push_back(edge);
      origin.emplace_back(e, Rational(0));
      continue;
    }
    VertexId from = edge.minus;
    Rational at = 0;
    std::size_t k = 0;
    for (const auto& [s, v] : cuts[e]) {
      edges.push_back(Edge{edge.name + "#" + std::to_string(k++), from, v, s - at});
      origin.emplace_back(e, at);
      from = v;
      at = s;
    }
    edges.push_back(Edge{edge.name + "#" + std::to_string(k), from, edge.plus, edge.length - at});
    origin.emplace_back(e, at);
  }
  std::vector<VertexId> point_vertices;
  for (const Point& p : points) {
    point_vertices.push_back(p.is_vertex() ? p.vertex : cuts[p.edge].at(p.s));
  }
  return Subdivision{WeightedMultigraph(std::move(names), std::move(edges)),
                     std::move(point_vertices), std::move(origin)};
}

/// Metrized graph with its vertex-level resistance data precomputed.
class MetrizedGraph {
 public:
  explicit MetrizedGraph(WeightedMultigraph model)
      : model_(std::move(model)), pinv_(pseudoinverse(model_)) {
    bridge_resistance_.reserve(model_.edge_count());
    foster_.reserve(model_.edge_count());
    for (EdgeId e = 0; e < model_.edge_count(); ++e) {
      const Edge& edge = model_.edge(e);
      ExtendedRational r;
      if (edge.is_loop()) {
        r = Rational(0);
      } else if (!connected_without(model_, e, edge.minus, edge.plus)) {
        r = ExtendedRational::infinity();
      } else {
        std::vector<Edge> rest;
        for (EdgeId f = 0; f < model_.edge_count(); ++f) {
          if (f != e) rest.push_back(model_.edge(f));
        }
        WeightedMultigraph removed(model_.vertex_names(), std::move(rest));
        r = effective_resistance_vertices(removed, edge.minus, edge.plus);
      }
      foster_.push_back(r.is_infinite() ? Rational(0)
                                        : Rational(edge.length / (edge.length + r.value())));
      bridge_resistance_.push_back(std::move(r));
    }
  }

  const WeightedMultigraph& model() const { return model_; }
  const RationalMatrix& pseudoinverse_matrix() const { return pinv_; }

  std::size_t vertex_count() const { return model_.vertex_count(); }
  std::size_t edge_count() const { return model_.edge_count(); }
  const Edge& edge(EdgeId e) const { return model_.edge(e); }

  /// r(x,y) for vertices.
  Rational vertex_resistance(VertexId x, VertexId y) const {
    return resistance_from_pseudoinverse(pinv_, x, y);
  }

  const ExtendedRational& bridge_resistance(EdgeId e) const { return bridge_resistance_.at(e); }
  const Rational& foster(EdgeId e) const { return foster_.at(e); }

  bool is_point() const { return model_.edge_count() == 0; }

 private:
  WeightedMultigraph model_;
  RationalMatrix pinv_;
  std::vector<ExtendedRational> bridge_resistance_;
  std::vector<Rational> foster_;
};

/// Promotes points to vertices and returns the relabeling alongside.
inline std::pair<MetrizedGraph, std::vector<VertexId>> subdivide_at(
    const MetrizedGraph& gamma, const std::vector<Point>& points) {
  Subdivision sub = subdivide(gamma.model(), points);
  return {MetrizedGraph(std::move(sub.graph)), std::move(sub.point_vertices)};
}

inline ExtendedRational bridge_resistance(const MetrizedGraph& gamma, EdgeId e) {
  return gamma.bridge_resistance(e);
}

/// F(e) = l(e) / (l(e) + r(e)); zero on bridges, one on loops.
inline Rational foster_coefficient(const MetrizedGraph& gamma, EdgeId e) {
  return gamma.foster(e);
}

/// Effective resistance between arbitrary points of the metric space.
inline Rational resistance(const MetrizedGraph& gamma, const Point& x, const Point& y) {
  if (x == y) return 0;
  if (x.is_vertex() && y.is_vertex()) return gamma.vertex_resistance(x.vertex, y.vertex);
  Subdivision sub = subdivide(gamma.model(), {x, y});
  return effective_resistance_vertices(sub.graph, sub.point_vertices[0], sub.point_vertices[1]);
}

// ---------------------------------------------------------------------------
// Function space

/// Continuous function on the metrized graph, quadratic on each piece of each
/// edge. Edge polynomials use s = distance from e^-.
class PiecewiseQuadratic {
 public:
  PiecewiseQuadratic(const WeightedMultigraph& g, std::vector<Rational> vertex_values,
                     std::vector<PiecewisePolynomial> edge_functions)
      : vertex_values_(std::move(vertex_values)), edges_(std::move(edge_functions)) {
    if (vertex_values_.size() != g.vertex_count() || edges_.size() != g.edge_count()) {
      throw std::invalid_argument("PiecewiseQuadratic: shape does not match graph");
    }
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const Edge& edge = g.edge(e);
      edges_[e] = edges_[e].canonical();
      const PiecewisePolynomial& f = edges_[e];
      if (f.length() != edge.length || f.degree() > 2) {
        throw std::invalid_argument("PiecewiseQuadratic: edge '" + edge.name +
                                    "' is not a quadratic on its length");
      }
      for (const Rational& b : f.breaks()) {
        if (f.left_value(b) != f.right_value(b)) {
          throw std::invalid_argument("PiecewiseQuadratic: discontinuous on '" + edge.name + "'");
        }
      }
      if (f(Rational(0)) != vertex_values_[edge.minus] ||
          f(edge.length) != vertex_values_[edge.plus]) {
        throw std::invalid_argument("PiecewiseQuadratic: endpoint mismatch on '" + edge.name +
                                    "'");
      }
    }
  }

  static PiecewiseQuadratic constant(const WeightedMultigraph& g, const Rational& c) {
    std::vector<PiecewisePolynomial> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(e.length, Polynomial::constant(c));
    return PiecewiseQuadratic(g, std::vector<Rational>(g.vertex_count(), c), std::move(edges));
  }

  const std::vector<Rational>& vertex_values() const { return vertex_values_; }
  const Rational& at_vertex(VertexId v) const { return vertex_values_.at(v); }
  const PiecewisePolynomial& on_edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<PiecewisePolynomial>& edge_functions() const { return edges_; }

  Rational operator()(const Point& p) const {
    return p.is_vertex() ? vertex_values_.at(p.vertex) : edges_.at(p.edge)(p.s);
  }

  /// Value of the function on a divisor: sum D(v) f(v).
  Rational operator()(const VertexDivisor& d) const {
    Rational total = 0;
    for (VertexId v = 0; v < d.size(); ++v) total += d[v] * vertex_values_[v];
    return total;
  }

  PiecewiseQuadratic& operator+=(const PiecewiseQuadratic& o) {
    for (std::size_t v = 0; v < vertex_values_.size(); ++v) vertex_values_[v] += o.vertex_values_[v];
    for (std::size_t e = 0; e < edges_.size(); ++e) edges_[e] = edges_[e] + o.edges_[e];
    return *this;
  }
  PiecewiseQuadratic& operator-=(const PiecewiseQuadratic& o) {
    for (std::size_t v = 0; v < vertex_values_.size(); ++v) vertex_values_[v] -= o.vertex_values_[v];
    for (std::size_t e = 0; e < edges_.size(); ++e) edges_[e] = edges_[e] - o.edges_[e];
    return *this;
  }
  PiecewiseQuadratic& operator*=(const Rational& s) {
    for (Rational& v : vertex_values_) v *= s;
    for (PiecewisePolynomial& f : edges_) f = s * f;
    return *this;
  }
  /// Adds a constant.
  PiecewiseQuadratic& operator+=(const Rational& c) {
    for (Rational& v : vertex_values_) v += c;
    for (PiecewisePolynomial& f : edges_) {
      f = f + PiecewisePolynomial(f.length(), Polynomial::constant(c));
    }
    return *this;
  }
  friend PiecewiseQuadratic operator+(PiecewiseQuadratic a, const PiecewiseQuadratic& b) {
    return a += b;
  }
  friend PiecewiseQuadratic operator-(PiecewiseQuadratic a, const PiecewiseQuadratic& b) {
    return a -= b;
  }
  friend PiecewiseQuadratic operator*(const Rational& s, PiecewiseQuadratic a) { return a *= s; }
  friend PiecewiseQuadratic operator+(PiecewiseQuadratic a, const Rational& c) { return a += c; }

  friend bool operator==(const PiecewiseQuadratic& a, const PiecewiseQuadratic& b) {
    return a.vertex_values_ == b.vertex_values_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Rational> vertex_values_;
  std::vector<PiecewisePolynomial> edges_;
};

/// Pulls a function on a subdivision back to the original model.
inline PiecewiseQuadratic pull_back(const WeightedMultigraph& original, const Subdivision& sub,
                                    const PiecewiseQuadratic& f) {
  std::vector<Rational> values(f.vertex_values().begin(),
                               f.vertex_values().begin() +
                                   static_cast<std::ptrdiff_t>(original.vertex_count()));
  std::vector<std::vector<Rational>> breaks(original.edge_count());
  std::vector<std::vector<Polynomial>> pieces(original.edge_count());
  for (EdgeId ne = 0; ne < sub.edge_origin.size(); ++ne) {
    const auto& [e, offset] = sub.edge_origin[ne];
    if (sgn(offset) > 0) breaks[e].push_back(offset);
    const PiecewisePolynomial& local = f.on_edge(ne);
    for (std::size_t i = 0; i < local.piece_count(); ++i) {
      if (i > 0) breaks[e].push_back(local.piece_start(i) + offset);
      pieces[e].push_back(local.pieces()[i].shifted(-offset));
    }
  }
  std::vector<PiecewisePolynomial> edges;
  for (EdgeId e = 0; e < original.edge_count(); ++e) {
    edges.emplace_back(original.edge(e).length, std::move(breaks[e]), std::move(pieces[e]));
  }
  return PiecewiseQuadratic(original, std::move(values), std::move(edges));
}

// ---------------------------------------------------------------------------
// Currents

/// Linear functional on the function space: atoms at vertices and at edge
/// interior points, plus a piecewise polynomial density against ds per edge.
class Current {
 public:
  using InteriorKey = std::pair<EdgeId, Rational>;

  Current() = default;
  explicit Current(const WeightedMultigraph& g) : vertex_atoms_(g.vertex_count(), Rational(0)) {
    for (const Edge& e : g.edges()) densities_.emplace_back(e.length, Polynomial());
  }

  static Current dirac(const WeightedMultigraph& g, const Point& p, const Rational& mass = 1) {
    Current c(g);
    c.add_atom(p, mass);
    return c;
  }

  static Current divisor(const WeightedMultigraph& g, const VertexDivisor& d) {
    Current c(g);
    for (VertexId v = 0; v < d.size(); ++v) c.vertex_atoms_[v] = d[v];
    return c;
  }

  void add_atom(const Point& p, const Rational& mass) {
    if (p.is_vertex()) {
      vertex_atoms_.at(p.vertex) += mass;
      return;
    }
    Rational& m = interior_atoms_[{p.edge, p.s}];
    m += mass;
    if (m == 0) interior_atoms_.erase({p.edge, p.s});
  }

  void add_density(EdgeId e, const PiecewisePolynomial& density) {
    densities_.at(e) = densities_.at(e) + density;
  }

  const std::vector<Rational>& vertex_atoms() const { return vertex_atoms_; }
  const std::map<InteriorKey, Rational>& interior_atoms() const { return interior_atoms_; }
  const std::vector<PiecewisePolynomial>& densities() const { return densities_; }
  const Rational& vertex_atom(VertexId v) const { return vertex_atoms_.at(v); }
  const PiecewisePolynomial& density(EdgeId e) const { return densities_.at(e); }

  Rational total_mass() const {
    Rational total = 0;
    for (const Rational& m : vertex_atoms_) total += m;
    for (const auto& [key, m] : interior_atoms_) total += m;
    for (const PiecewisePolynomial& d : densities_) total += d.integral();
    return total;
  }

  Current& operator+=(const Current& o) {
    for (std::size_t v = 0; v < vertex_atoms_.size(); ++v) vertex_atoms_[v] += o.vertex_atoms_[v];
    for (const auto& [key, m] : o.interior_atoms_) {
      Rational& mine = interior_atoms_[key];
      mine += m;
      if (mine == 0) interior_atoms_.erase(key);
    }
    for (std::size_t e = 0; e < densities_.size(); ++e) {
      densities_[e] = densities_[e] + o.densities_[e];
    }
    return *this;
  }
  Current& operator*=(const Rational& s) {
    for (Rational& m : vertex_atoms_) m *= s;
    if (s == 0) interior_atoms_.clear();
    for (auto& [key, m] : interior_atoms_) m *= s;
    for (PiecewisePolynomial& d : densities_) d = s * d;
    return *this;
  }
  Current& operator-=(const Current& o) { return *this += Rational(-1) * o; }

  friend Current operator+(Current a, const Current& b) { return a += b; }
  friend Current operator-(Current a, const Current& b) { return a -= b; }
  friend Current operator*(const Rational& s, Current a) { return a *= s; }

  friend bool operator==(const Current& a, const Current& b) {
    return a.vertex_atoms_ == b.vertex_atoms_ && a.interior_atoms_ == b.interior_atoms_ &&
           a.densities_ == b.densities_;
  }

 private:
  std::vector<Rational> vertex_atoms_;
  std::map<InteriorKey, Rational> interior_atoms_;
  std::vector<PiecewisePolynomial> densities_;
};

/// Pairing of a function with a current.
inline Rational integrate(const MetrizedGraph& gamma, const PiecewiseQuadratic& f,
                          const Current& m) {
  Rational total = 0;
  for (VertexId v = 0; v < gamma.vertex_count(); ++v) {
    if (m.vertex_atom(v) != 0) total += m.vertex_atom(v) * f.at_vertex(v);
  }
  for (const auto& [key, mass] : m.interior_atoms()) total += mass * f.on_edge(key.first)(key.second);
  for (EdgeId e = 0; e < gamma.edge_count(); ++e) {
    const PiecewisePolynomial& density = m.density(e);
    if (density.degree() < 0) continue;
    total += (f.on_edge(e) * density).integral();
  }
  return total;
}

/// Delta f = -(sum of outgoing one-sided derivatives) at vertices and kinks,
/// plus the density -f''.
inline Current laplacian_of(const MetrizedGraph& gamma, const PiecewiseQuadratic& f) {
  const WeightedMultigraph& g = gamma.model();
  Current delta(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const PiecewisePolynomial& fe = f.on_edge(e);
    const PiecewisePolynomial slope = fe.derivative();
    // Outgoing derivative at e^- is f'(0); at e^+ the direction points back
    // along the edge, so it is -f'(l).
    delta.add_atom(Point::at_vertex(edge.minus), -slope(Rational(0)));
    delta.add_atom(Point::at_vertex(edge.plus), slope.left_value(edge.length));
    for (const Rational& b : fe.breaks()) {
      // -(f'(b+) - f'(b-))
      Rational mass = slope.left_value(b) - slope.right_value(b);
      if (mass != 0) delta.add_atom(Point{Point::Kind::Edge, 0, e, b}, mass);
    }
    delta.add_density(e, Rational(-1) * slope.derivative());
  }
  return delta;
}

/// mu_can: atom -(v(x) - 2)/2 at each vertex, density F(e)/l(e) on each edge.
inline Current canonical_measure(const MetrizedGraph& gamma) {
  const WeightedMultigraph& g = gamma.model();
  Current mu(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    mu.add_atom(Point::at_vertex(v),
                rational(2 - static_cast<long>(g.valence(v)), 2));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    mu.add_density(e, PiecewisePolynomial(edge.length,
                                          Polynomial::constant(gamma.foster(e) / edge.length)));
  }
  return mu;
}

/// Discrete measure with mass sum_{e in E(v)} F(e) at v (loops count twice).
inline Current foster_vertex_measure(const MetrizedGraph& gamma) {
  const WeightedMultigraph& g = gamma.model();
  Current nu(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    nu.add_atom(Point::at_vertex(g.edge(e).minus), gamma.foster(e));
    nu.add_atom(Point::at_vertex(g.edge(e).plus), gamma.foster(e));
  }
  return nu;
}

namespace detail {

// r(x, .) for a vertex x, one quadratic per edge:
//   r(x,e^-)(l-s)/l + r(x,e^+) s/l + F(e) s(l-s)/l.
inline PiecewiseQuadratic vertex_resistance_function(const MetrizedGraph& gamma, VertexId x) {
  const WeightedMultigraph& g = gamma.model();
  std::vector<Rational> values;
  for (VertexId v = 0; v < g.vertex_count(); ++v) values.push_back(gamma.vertex_resistance(x, v));
  std::vector<PiecewisePolynomial> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const Rational& rm = values[edge.minus];
    const Rational& rp = values[edge.plus];
    const Rational& f = gamma.foster(e);
    Polynomial p({rm, Rational((rp - rm) / edge.length + f), Rational(-f / edge.length)});
    edges.emplace_back(edge.length, std::move(p));
  }
  return PiecewiseQuadratic(g, std::move(values), std::move(edges));
}

}  // namespace detail

/// y -> r(x, y). For an edge-interior x the containing edge carries two
/// pieces meeting at x.
inline PiecewiseQuadratic resistance_function(const MetrizedGraph& gamma, const Point& x) {
  if (x.is_vertex()) return detail::vertex_resistance_function(gamma, x.vertex);
  Subdivision sub = subdivide(gamma.model(), {x});
  MetrizedGraph refined(sub.graph);
  return pull_back(gamma.model(), sub,
                   detail::vertex_resistance_function(refined, sub.point_vertices[0]));
}

/// tau = (1/2) int r(x, y) mu_can(y), independent of x.
inline Rational tau(const MetrizedGraph& gamma) {
  if (gamma.is_point()) return 0;
  const Current mu = canonical_measure(gamma);
  const Rational value = integrate(gamma, resistance_function(gamma, Point::at_vertex(0)), mu) / 2;
#ifndef NDEBUG
  {
    const Point other = gamma.vertex_count() > 1
                            ? Point::at_vertex(1)
                            : Point::on_edge(gamma.model(), 0, gamma.edge(0).length / 2);
    const Rational again = integrate(gamma, resistance_function(gamma, other), mu) / 2;
    assert(again == value && "tau depends on the base point");
  }
#endif
  return value;
}

/// (1/2) int_e r(x, y) mu_can^cts(y).
inline Rational tau_cts(const MetrizedGraph& gamma, const Point& x, EdgeId e) {
  const Edge& edge = gamma.edge(e);
  const Rational& f = gamma.foster(e);
  if (!x.is_vertex() && x.edge == e) {
    const PiecewiseQuadratic r = resistance_function(gamma, x);
    return (f / edge.length) * r.on_edge(e).integral() / 2;
  }
  const Rational rm = resistance(gamma, x, Point::at_vertex(edge.minus));
  const Rational rp = resistance(gamma, x, Point::at_vertex(edge.plus));
  return f * (rm + rp + f * edge.length / 3) / 4;
}

/// sum over edges of tau_cts(x, e).
inline Rational tau_cts(const MetrizedGraph& gamma, const Point& x) {
  Rational total = 0;
  for (EdgeId e = 0; e < gamma.edge_count(); ++e) total += tau_cts(gamma, x, e);
  return total;
}

/// (1/3) F(e)^2 l(e). Depends on the model, not just the metric space.
inline Rational eta_edge(const MetrizedGraph& gamma, EdgeId e) {
  const Rational& f = gamma.foster(e);
  return f * f * gamma.edge(e).length / 3;
}

inline Rational eta(const MetrizedGraph& gamma) {
  Rational total = 0;
  for (EdgeId e = 0; e < gamma.edge_count(); ++e) total += eta_edge(gamma, e);
  return total;
}

}  // namespace arakgraph
