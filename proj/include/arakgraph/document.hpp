#pragma once

// JSON graph documents and exact-rational reports.
//
//   {
//     "vertices": [{"id": "a", "genus": 1}, ...],
//     "edges": [{"id": "e", "from": "a", "to": "b", "length": "3/2"}, ...],
//     "sections": {"P": "a"},
//     "polarization": {"a": 1, "b": 1}
//   }
//
// Lengths are integers or strings "p/q". A document with "polarization" is a
// raw polarized metrized graph; otherwise it is a fiber whose edge lengths
// are node multiplicities and whose missing genera default to 0.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "arakgraph/degeneration.hpp"

namespace arakgraph {

struct GraphDocument {
  struct Vertex {
    std::string id;
    std::optional<long> genus;
    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  struct EdgeEntry {
    std::string id;
    std::string from;
    std::string to;
    Rational length;
    friend bool operator==(const EdgeEntry&, const EdgeEntry&) = default;
  };
  std::vector<Vertex> vertices;
  std::vector<EdgeEntry> edges;
  std::map<std::string, std::string> sections;
  std::optional<std::map<std::string, long>> polarization;

  bool is_fiber() const { return !polarization.has_value(); }
  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] inline void structure_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

inline const nlohmann::json& member(const nlohmann::json& obj, const char* key,
                                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) structure_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::string string_field(const nlohmann::json& obj, const char* key,
                                const std::string& where) {
  const nlohmann::json& v = member(obj, key, where);
  if (!v.is_string()) structure_error(where + "." + key, "expected a string");
  return v.get<std::string>();
}

inline long integer_value(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) structure_error(where, "expected an integer");
  return v.get<long>();
}

inline Rational length_value(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      structure_error(where, e.what());
    }
  }
  structure_error(where, "expected an integer or a string \"p/q\"");
}

}  // namespace detail

/// Syntax errors carry the line and column of the offending byte.
inline GraphDocument parse_document(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos) {
      message = message.substr(pos);
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + message);
  }
  if (!root.is_object()) detail::structure_error("document", "expected an object");

  GraphDocument doc;
  const nlohmann::json& vertices = detail::member(root, "vertices", "document");
  if (!vertices.is_array()) detail::structure_error("vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const nlohmann::json& v = vertices[i];
    if (!v.is_object()) detail::structure_error(where, "expected an object");
    GraphDocument::Vertex vertex{detail::string_field(v, "id", where), std::nullopt};
    if (auto g = v.find("genus"); g != v.end()) vertex.genus = detail::integer_value(*g, where + ".genus");
    doc.vertices.push_back(std::move(vertex));
  }

  const nlohmann::json& edges = detail::member(root, "edges", "document");
  if (!edges.is_array()) detail::structure_error("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const nlohmann::json& e = edges[i];
    if (!e.is_object()) detail::structure_error(where, "expected an object");
    doc.edges.push_back({detail::string_field(e, "id", where), detail::string_field(e, "from", where),
                         detail::string_field(e, "to", where),
                         detail::length_value(detail::member(e, "length", where), where + ".length")});
  }

  if (auto s = root.find("sections"); s != root.end()) {
    if (!s->is_object()) detail::structure_error("sections", "expected an object");
    for (const auto& [name, target] : s->items()) {
      if (!target.is_string()) detail::structure_error("sections." + name, "expected a vertex id");
      doc.sections[name] = target.get<std::string>();
    }
  }
  if (auto k = root.find("polarization"); k != root.end()) {
    if (!k->is_object()) detail::structure_error("polarization", "expected an object");
    std::map<std::string, long> pol;
    for (const auto& [id, value] : k->items()) {
      pol[id] = detail::integer_value(value, "polarization." + id);
    }
    doc.polarization = std::move(pol);
  }
  return doc;
}

inline std::string emit_document(const GraphDocument& doc) {
  nlohmann::ordered_json root;
  root["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : doc.vertices) {
    nlohmann::ordered_json entry{{"id", v.id}};
    if (v.genus) entry["genus"] = *v.genus;
    root["vertices"].push_back(std::move(entry));
  }
  root["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : doc.edges) {
    root["edges"].push_back(
        {{"id", e.id}, {"from", e.from}, {"to", e.to}, {"length", to_string(e.length)}});
  }
  if (!doc.sections.empty()) {
    root["sections"] = nlohmann::ordered_json::object();
    for (const auto& [name, target] : doc.sections) root["sections"][name] = target;
  }
  if (doc.polarization) {
    root["polarization"] = nlohmann::ordered_json::object();
    for (const auto& [id, value] : *doc.polarization) root["polarization"][id] = value;
  }
  return root.dump(2) + "\n";
}

inline GraphSpec graph_spec(const GraphDocument& doc) {
  GraphSpec spec;
  for (const auto& v : doc.vertices) spec.vertices.push_back(v.id);
  for (const auto& e : doc.edges) spec.edges.push_back({e.id, e.from, e.to, e.length});
  return spec;
}

inline NodalFiberSpec fiber_of(const GraphDocument& doc) {
  if (!doc.is_fiber()) {
    throw Error(ErrorKind::InvalidPolarization,
                "document carries an explicit polarization, not a fiber description");
  }
  NodalFiberSpec fiber;
  for (const auto& v : doc.vertices) fiber.components.push_back({v.id, v.genus.value_or(0)});
  for (const auto& e : doc.edges) {
    if (sgn(e.length) <= 0) {
      throw Error(ErrorKind::NonPositiveLength, "node '" + e.id + "' has multiplicity " +
                                                    to_string(e.length));
    }
    if (!is_integer(e.length)) {
      throw Error(ErrorKind::NonSemistable, "node '" + e.id + "' has non-integer multiplicity " +
                                                to_string(e.length));
    }
    fiber.nodes.push_back({e.id, e.from, e.to, e.length.get_num().get_si()});
  }
  fiber.sections = doc.sections;
  return fiber;
}

inline GraphDocument document_of(const NodalFiberSpec& fiber) {
  GraphDocument doc;
  for (const auto& c : fiber.components) doc.vertices.push_back({c.id, c.genus});
  for (const auto& n : fiber.nodes) doc.edges.push_back({n.id, n.a, n.b, Rational(n.multiplicity)});
  doc.sections = fiber.sections;
  return doc;
}

inline GraphDocument document_of(const PolarizedMetrizedGraph& p) {
  GraphDocument doc;
  const WeightedMultigraph& g = p.model();
  for (VertexId v = 0; v < g.vertex_count(); ++v) doc.vertices.push_back({g.vertex_name(v), std::nullopt});
  for (const Edge& e : g.edges()) {
    doc.edges.push_back({e.name, g.vertex_name(e.minus), g.vertex_name(e.plus), e.length});
  }
  std::map<std::string, long> pol;
  for (VertexId v = 0; v < g.vertex_count(); ++v) pol[g.vertex_name(v)] = p.k()[v].get_num().get_si();
  doc.polarization = std::move(pol);
  return doc;
}

/// The polarized metrized graph a document describes.
inline PolarizedMetrizedGraph polarized_graph_of(const GraphDocument& doc) {
  if (doc.is_fiber()) return polarized_graph_of(fiber_of(doc));
  WeightedMultigraph g = build_graph(graph_spec(doc));
  VertexDivisor k(g.vertex_count());
  for (const auto& [id, value] : *doc.polarization) {
    auto v = g.find_vertex(id);
    if (!v) throw Error(ErrorKind::InvalidPolarization, "polarization names unknown vertex '" + id + "'");
    k[*v] = value;
  }
  return PolarizedMetrizedGraph(MetrizedGraph(std::move(g)), std::move(k));
}

/// Vertex id, or "edge:ID@p/q" for the point at distance p/q from the
/// edge's first endpoint.
inline Point parse_point(const WeightedMultigraph& g, const std::string& spec) {
  if (spec.rfind("edge:", 0) == 0) {
    const std::size_t at = spec.find('@');
    if (at == std::string::npos) {
      throw Error(ErrorKind::ParseError, "point '" + spec + "' lacks '@position'");
    }
    const std::string edge = spec.substr(5, at - 5);
    auto e = g.find_edge(edge);
    if (!e) throw Error(ErrorKind::UnknownPoint, "no edge named '" + edge + "'");
    return Point::on_edge(g, *e, parse_rational(spec.substr(at + 1)));
  }
  auto v = g.find_vertex(spec);
  if (!v) throw Error(ErrorKind::UnknownPoint, "no vertex named '" + spec + "'");
  return Point::at_vertex(*v);
}

// ---------------------------------------------------------------------------
// Reports

struct ReportEntry {
  std::string key;
  std::variant<Rational, std::string> value;
  std::string description;
};

class Report {
 public:
  void add(std::string key, Rational value, std::string description = {}) {
    entries_.push_back({std::move(key), std::move(value), std::move(description)});
  }
  void add_text(std::string key, std::string value, std::string description = {}) {
    entries_.push_back({std::move(key), std::move(value), std::move(description)});
  }
  const std::vector<ReportEntry>& entries() const { return entries_; }

  const Rational* find(const std::string& key) const {
    for (const ReportEntry& e : entries_) {
      if (e.key == key) return std::get_if<Rational>(&e.value);
    }
    return nullptr;
  }

 private:
  std::vector<ReportEntry> entries_;
};

enum class ReportFormat { Text, Machine };

/// Text: aligned "key  value  [~decimal]  description". Machine: one
/// "key = p/q" per line, plus "key.approx = d" when digits are requested.
inline std::string render(const Report& report, ReportFormat format,
                          std::optional<int> decimal_digits = std::nullopt) {
  std::ostringstream out;
  auto text = [](const ReportEntry& e) {
    const Rational* q = std::get_if<Rational>(&e.value);
    return q ? to_string(*q) : std::get<std::string>(e.value);
  };
  std::size_t width = 0, value_width = 0;
  for (const ReportEntry& e : report.entries()) {
    width = std::max(width, e.key.size());
    if (std::holds_alternative<Rational>(e.value)) value_width = std::max(value_width, text(e).size());
  }
  for (const ReportEntry& e : report.entries()) {
    const Rational* q = std::get_if<Rational>(&e.value);
    const std::string value = text(e);
    if (format == ReportFormat::Machine) {
      out << e.key << " = " << value << "\n";
      if (q && decimal_digits) out << e.key << ".approx = " << to_decimal(*q, *decimal_digits) << "\n";
      continue;
    }
    out << e.key << std::string(width - e.key.size() + 2, ' ') << value;
    if (q && (decimal_digits || !e.description.empty())) out << std::string(value_width - value.size(), ' ');
    if (q && decimal_digits) out << "  (approx " << to_decimal(*q, *decimal_digits) << ")";
    if (!e.description.empty()) out << "  # " << e.description;
    out << "\n";
  }
  return out.str();
}

}  // namespace arakgraph
