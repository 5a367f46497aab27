#pragma once

// Special fibers of semistable degenerations: dual graph, desingularization,
// and the leading coefficients of the degeneration asymptotics.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arakgraph/admissible.hpp"

namespace arakgraph {

struct NodalFiberSpec {
  struct Component {
    std::string id;
    long genus = 0;
    friend bool operator==(const Component&, const Component&) = default;
  };
  struct Node {
    std::string id;
    std::string a;
    std::string b;
    long multiplicity = 1;
    friend bool operator==(const Node&, const Node&) = default;
  };
  std::vector<Component> components;
  std::vector<Node> nodes;
  /// section name -> component id
  std::map<std::string, std::string> sections;

  friend bool operator==(const NodalFiberSpec&, const NodalFiberSpec&) = default;
};

/// Weighted dual graph: a vertex per component, an edge of length n per
/// node of multiplicity n.
inline WeightedMultigraph dual_graph(const NodalFiberSpec& fiber) {
  GraphSpec spec;
  for (const auto& c : fiber.components) {
    if (c.genus < 0) {
      throw Error(ErrorKind::NonSemistable, "component '" + c.id + "' has negative genus");
    }
    spec.vertices.push_back(c.id);
  }
  for (const auto& n : fiber.nodes) spec.edges.push_back({n.id, n.a, n.b, Rational(n.multiplicity)});
  return build_graph(spec);
}

/// K(x) = v(x) - 2 + 2 q(x), h = b1 + sum q.
inline PolarizedMetrizedGraph polarized_graph_of(const NodalFiberSpec& fiber) {
  WeightedMultigraph g = dual_graph(fiber);
  long h = static_cast<long>(betti_number(g));
  for (const auto& c : fiber.components) h += c.genus;
  if (h == 0) throw Error(ErrorKind::GenusZero, "total genus is 0");
  VertexDivisor k(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    k[v] = static_cast<long>(g.valence(v)) - 2 + 2 * fiber.components[v].genus;
    if (sgn(k[v]) < 0) {
      throw Error(ErrorKind::NonSemistable,
                  "component '" + g.vertex_name(v) + "' is a rational tail (K = " +
                      to_string(k[v]) + ")");
    }
  }
  return PolarizedMetrizedGraph(MetrizedGraph(std::move(g)), std::move(k));
}

/// A desingularized fiber with, for every original node, the indices of the
/// unit nodes forming its chain (ordered from the node's first component).
struct Desingularization {
  NodalFiberSpec fiber;
  std::vector<std::vector<std::size_t>> chains;
};

/// Replaces each node of multiplicity n by a chain of n - 1 rational
/// components joined by n nodes of multiplicity 1.
inline Desingularization desingularize_with_map(const NodalFiberSpec& fiber) {
  std::set<std::string> taken;
  for (const auto& c : fiber.components) taken.insert(c.id);
  for (const auto& n : fiber.nodes) taken.insert(n.id);
  auto fresh = [&](std::string name) {
    while (taken.count(name)) name += "'";
    taken.insert(name);
    return name;
  };

  Desingularization out;
  out.fiber.components = fiber.components;
  out.fiber.sections = fiber.sections;
  std::vector<NodalFiberSpec::Node>& nodes = out.fiber.nodes;
  for (const auto& n : fiber.nodes) {
    std::vector<std::size_t>& chain = out.chains.emplace_back();
    if (n.multiplicity <= 1) {
      chain.push_back(nodes.size());
      nodes.push_back(n);
      continue;
    }
    std::string previous = n.a;
    for (long k = 1; k < n.multiplicity; ++k) {
      const std::string link = fresh(n.id + "." + std::to_string(k));
      out.fiber.components.push_back({link, 0});
      chain.push_back(nodes.size());
      nodes.push_back({fresh(n.id + "#" + std::to_string(k)), previous, link, 1});
      previous = link;
    }
    chain.push_back(nodes.size());
    nodes.push_back({fresh(n.id + "#" + std::to_string(n.multiplicity)), previous, n.b, 1});
  }
  return out;
}

inline NodalFiberSpec desingularize(const NodalFiberSpec& fiber) {
  return desingularize_with_map(fiber).fiber;
}

/// The point of the desingularized dual graph corresponding to p.
inline Point desingularized_point(const Desingularization& d, const WeightedMultigraph& desing,
                                  const Point& p) {
  if (p.is_vertex()) return p;
  const std::vector<std::size_t>& chain = d.chains.at(p.edge);
  const Integer whole = p.s.get_num() / p.s.get_den();
  const std::size_t k = std::min<std::size_t>(whole.get_ui(), chain.size() - 1);
  return Point::on_edge(desing, chain[k], p.s - static_cast<long>(k));
}

inline VertexId section_vertex(const NodalFiberSpec& fiber, const WeightedMultigraph& g,
                               const std::string& name) {
  auto it = fiber.sections.find(name);
  if (it == fiber.sections.end()) {
    throw Error(ErrorKind::MissingSection, "no section named '" + name + "'");
  }
  auto v = g.find_vertex(it->second);
  if (!v) {
    throw Error(ErrorKind::UnknownPoint,
                "section '" + name + "' specializes to unknown component '" + it->second + "'");
  }
  return *v;
}

/// Graph coefficients of the Lear extensions. Section-dependent entries are
/// empty when the section was not supplied.
struct LearReport {
  Rational omegaOmega;
  std::optional<Rational> POmega;
  std::optional<Rational> PQ;
  std::optional<Rational> kappaB;
  std::optional<Rational> deltaB;
  std::optional<Rational> deltaPBsq;
  std::optional<Rational> deltaPBsq_ofLears;
  Rational eta_desingularized;

  /// Present entries in a fixed order.
  std::vector<std::pair<std::string, Rational>> entries() const {
    std::vector<std::pair<std::string, Rational>> out{{"omegaOmega", omegaOmega}};
    auto add = [&](const char* key, const std::optional<Rational>& v) {
      if (v) out.emplace_back(key, *v);
    };
    add("POmega", POmega);
    add("PQ", PQ);
    add("kappaB", kappaB);
    add("deltaB", deltaB);
    add("deltaPBsq", deltaPBsq);
    add("deltaPBsq_ofLears", deltaPBsq_ofLears);
    return out;
  }
};

inline LearReport lear_coefficients(const NodalFiberSpec& fiber,
                                    const std::optional<std::string>& p_name = std::nullopt,
                                    const std::optional<std::string>& q_name = std::nullopt) {
  const PolarizedMetrizedGraph p = polarized_graph_of(fiber);
  const WeightedMultigraph& g = p.model();
  const long h = p.genus();
  const Rational eps = epsilon(p);

  LearReport report;
  report.omegaOmega = -eps;
  report.eta_desingularized = eta(polarized_graph_of(desingularize(fiber)).graph());
  if (q_name && !p_name) {
    throw Error(ErrorKind::MissingSection, "a second section requires a first one");
  }
  if (!p_name) return report;

  const VertexId x = section_vertex(fiber, g, *p_name);
  const Point px = Point::at_vertex(x);
  const Rational gxx = green_admissible(p, px, px);
  report.POmega = -gxx;
  VertexDivisor e = Rational(2 * h - 2) * VertexDivisor::point(g.vertex_count(), x) - p.k();
  report.kappaB = -green_admissible(p, e, e);
  report.deltaPBsq = -(4 * h * gxx + eps);
  report.deltaPBsq_ofLears = -(4 * h * gxx + eps - report.eta_desingularized);

  if (q_name) {
    const VertexId y = section_vertex(fiber, g, *q_name);
    const Point py = Point::at_vertex(y);
    report.PQ = green_admissible(p, px, py);
    report.deltaB = -resistance(p.graph(), px, py);
  }
  return report;
}

struct AsymptoticsReport {
  Rational delta;  ///< volume of the dual graph
  Rational epsilon;
  Rational deltaSlope;
  std::size_t bettiNumber = 0;
  Rational treeConstant;
  std::string note;
};

inline AsymptoticsReport delta_asymptotics(const NodalFiberSpec& fiber) {
  const PolarizedMetrizedGraph p = polarized_graph_of(fiber);
  AsymptoticsReport r;
  r.delta = p.model().volume();
  r.epsilon = epsilon(p);
  r.deltaSlope = r.delta + r.epsilon;
  r.bettiNumber = betti_number(p.model());
  r.treeConstant = weighted_tree_count(p.model());
  r.note = r.bettiNumber == 0
               ? "tree: log det Im Omega bounded"
               : "non-tree: replace by " + std::to_string(r.bettiNumber) +
                     "*log(-log|t|) + const";
  return r;
}

struct ArakelovReport {
  Rational metricSlope;
  std::optional<Rational> greenSlope;
};

inline ArakelovReport arakelov_asymptotics(const NodalFiberSpec& fiber, const std::string& p_name,
                                           const std::optional<std::string>& q_name = std::nullopt) {
  const PolarizedMetrizedGraph p = polarized_graph_of(fiber);
  const Point px = Point::at_vertex(section_vertex(fiber, p.model(), p_name));
  ArakelovReport r;
  r.metricSlope = -green_admissible(p, px, px);
  if (q_name) {
    if (*q_name == p_name) {
      throw Error(ErrorKind::CoincidentSections, "sections '" + p_name + "' coincide");
    }
    const Point py = Point::at_vertex(section_vertex(fiber, p.model(), *q_name));
    r.greenSlope = green_admissible(p, px, py);
  }
  return r;
}

namespace detail {

inline std::pair<VertexId, EdgeId> split_edge_inputs(const WeightedMultigraph& g,
                                                     const std::string& node, VertexId x,
                                                     const Rational& a, const Rational& b) {
  auto e = g.find_edge(node);
  if (!e) throw Error(ErrorKind::UnknownPoint, "no node named '" + node + "'");
  if (x >= g.vertex_count()) throw Error(ErrorKind::UnknownPoint, "vertex index out of range");
  if (sgn(a) <= 0 || sgn(b) <= 0) {
    throw Error(ErrorKind::NonPositiveLength, "split parameters must be positive");
  }
  return {x, *e};
}

}  // namespace detail

/// Every edge is scaled by a + b and the node's edge e is replaced by a path
/// e- -- y -- e+ of lengths a l(e) and b l(e). Returns r(x, y), computed on
/// the rebuilt graph.
inline Rational split_edge_resistance(const NodalFiberSpec& fiber, const std::string& node,
                                      const Rational& a, const Rational& b, VertexId x) {
  const WeightedMultigraph g = dual_graph(fiber);
  const EdgeId split = detail::split_edge_inputs(g, node, x, a, b).second;
  const Rational scale = a + b;

  std::vector<std::string> names = g.vertex_names();
  std::set<std::string> taken(names.begin(), names.end());
  std::string mid = node + "@split";
  while (taken.count(mid)) mid += "'";
  names.push_back(mid);
  const VertexId y = names.size() - 1;

  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (e != split) {
      edges.push_back({edge.name, edge.minus, edge.plus, Rational(edge.length * scale)});
      continue;
    }
    edges.push_back({edge.name + "-a", edge.minus, y, Rational(edge.length * a)});
    edges.push_back({edge.name + "-b", y, edge.plus, Rational(edge.length * b)});
  }
  return effective_resistance_vertices(WeightedMultigraph(std::move(names), std::move(edges)), x,
                                       y);
}

/// r(x, e+) a + r(x, e-) b + F(e) l(e) ab / (a + b), from the unscaled model.
inline Rational split_edge_resistance_formula(const NodalFiberSpec& fiber, const std::string& node,
                                              const Rational& a, const Rational& b, VertexId x) {
  const MetrizedGraph gamma(dual_graph(fiber));
  const EdgeId e = detail::split_edge_inputs(gamma.model(), node, x, a, b).second;
  const Edge& edge = gamma.edge(e);
  return gamma.vertex_resistance(x, edge.plus) * a + gamma.vertex_resistance(x, edge.minus) * b +
         gamma.foster(e) * edge.length * a * b / (a + b);
}

/// (1/h)(sum q(x) delta_x + sum F(e) dy / l(e)).
inline Current limit_measure(const NodalFiberSpec& fiber) {
  const PolarizedMetrizedGraph p = polarized_graph_of(fiber);
  const WeightedMultigraph& g = p.model();
  Current m(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    m.add_atom(Point::at_vertex(v), Rational(fiber.components[v].genus));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    m.add_density(e, PiecewisePolynomial(g.edge(e).length,
                                         Polynomial::constant(p.graph().foster(e) / g.edge(e).length)));
  }
  return rational(1, p.genus()) * m;
}

/// Fiber-level consistency: desingularization invariance, the coefficient
/// relations between the Lear report entries, and the limit measure.
template <class Rng>
IdentityReport verify_fiber(const NodalFiberSpec& fiber, Rng& rng, std::size_t samples = 4) {
  IdentityReport report;
  auto record = [&](const std::string& name, const Rational& residual) {
    for (IdentityCheck& c : report.checks) {
      if (c.name == name) {
        if (c.residual == 0) c.residual = residual;
        return;
      }
    }
    report.checks.push_back({name, residual});
  };

  const PolarizedMetrizedGraph p = polarized_graph_of(fiber);
  const Desingularization d = desingularize_with_map(fiber);
  const PolarizedMetrizedGraph q = polarized_graph_of(d.fiber);
  const WeightedMultigraph& g = p.model();

  record("desingularized_volume", g.volume() - q.model().volume());
  record("desingularized_tau", p.tau() - q.tau());
  record("desingularized_epsilon", epsilon(p) - epsilon(q));
  record("desingularized_c", c_constant(p) - c_constant(q));

  std::vector<Point> points;
  for (VertexId v = 0; v < g.vertex_count(); ++v) points.push_back(Point::at_vertex(v));
  for (std::size_t i = 0; i < samples; ++i) points.push_back(detail::random_point(g, rng));
  for (const Point& x : points) {
    const Point dx = desingularized_point(d, q.model(), x);
    for (const Point& y : points) {
      const Point dy = desingularized_point(d, q.model(), y);
      record("desingularized_resistance",
             resistance(p.graph(), x, y) - resistance(q.graph(), dx, dy));
      record("desingularized_green", green_admissible(p, x, y) - green_admissible(q, dx, dy));
    }
  }

  const bool has_p = fiber.sections.count("P") > 0;
  const bool has_q = has_p && fiber.sections.count("Q") > 0;
  const std::optional<std::string> pn = has_p ? std::optional<std::string>("P") : std::nullopt;
  const std::optional<std::string> qn = has_q ? std::optional<std::string>("Q") : std::nullopt;
  const LearReport a = lear_coefficients(fiber, pn, qn);
  const LearReport b = lear_coefficients(d.fiber, pn, qn);
  const std::vector<std::pair<std::string, Rational>> ea = a.entries();
  const std::vector<std::pair<std::string, Rational>> eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].first == "deltaPBsq_ofLears") continue;
    record("desingularized_" + ea[i].first, ea[i].second - eb[i].second);
  }

  const long h = p.genus();
  if (has_p) {
    record("four_h_squared", 4 * h * h * *a.POmega - (*a.deltaPBsq + *a.kappaB));
  }
  if (has_q) {
    const LearReport qq = lear_coefficients(fiber, std::string("Q"));
    record("delta_decomposition", *a.deltaB - (2 * *a.PQ + *a.POmega + *qq.POmega));
  }

  record("limit_measure", detail::current_size(limit_measure(fiber) - p.measure()));
  const AsymptoticsReport asym = delta_asymptotics(fiber);
  record("delta_slope_positive",
         !fiber.nodes.empty() && sgn(asym.deltaSlope) <= 0 ? Rational(1) : Rational(0));
  return report;
}

}  // namespace arakgraph
