#include <gtest/gtest.h>

#include "arakgraph/document.hpp"
#include "arakgraph/random.hpp"

using namespace arakgraph;

namespace {

const char* kLoop = R"({
  "vertices": [{"id": "v", "genus": 1}],
  "edges": [{"id": "e", "from": "v", "to": "v", "length": 1}],
  "sections": {"P": "v"}
})";

const char* kRaw = R"({
  "vertices": [{"id": "a"}, {"id": "b"}],
  "edges": [{"id": "e1", "from": "a", "to": "b", "length": "3/2"},
            {"id": "e2", "from": "a", "to": "b", "length": "1/3"}],
  "polarization": {"a": 3, "b": 1}
})";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IdentityViolation;
}

}  // namespace

TEST(Document, ParsesFiber) {
  const GraphDocument doc = parse_document(kLoop);
  EXPECT_TRUE(doc.is_fiber());
  const NodalFiberSpec f = fiber_of(doc);
  EXPECT_EQ(f.components[0].genus, 1);
  EXPECT_EQ(f.nodes[0].multiplicity, 1);
  EXPECT_EQ(f.sections.at("P"), "v");
  EXPECT_EQ(epsilon(polarized_graph_of(doc)), rational(1, 6));
}

TEST(Document, ParsesPolarizedGraph) {
  const GraphDocument doc = parse_document(kRaw);
  EXPECT_FALSE(doc.is_fiber());
  const PolarizedMetrizedGraph p = polarized_graph_of(doc);
  EXPECT_EQ(p.genus(), 3);
  EXPECT_EQ(p.model().edge(0).length, rational(3, 2));
  EXPECT_EQ(kind_of([&] { fiber_of(doc); }), ErrorKind::InvalidPolarization);
}

TEST(Document, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_document("{\n  \"vertices\": [\n    {\"id\": \"a\",,}\n  ]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3, column 16"), std::string::npos) << e.what();
  }
}

TEST(Document, StructureErrors) {
  EXPECT_EQ(kind_of([] { parse_document("[]"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_document(R"({"vertices": []})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_document(R"({"vertices": [{"id": "a"}], "edges": [{"id": "e", "from": "a", "to": "a", "length": 1.5}]})");
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_document(R"({"vertices": [{"id": "a", "genus": "one"}], "edges": []})");
            }),
            ErrorKind::ParseError);
}

TEST(Document, SemanticErrorsSurfaceLater) {
  const GraphDocument zero = parse_document(
      R"({"vertices": [{"id": "a", "genus": 1}, {"id": "b", "genus": 1}],
          "edges": [{"id": "e", "from": "a", "to": "b", "length": "0"}]})");
  EXPECT_EQ(kind_of([&] { polarized_graph_of(zero); }), ErrorKind::NonPositiveLength);
  const GraphDocument fractional = parse_document(
      R"({"vertices": [{"id": "a", "genus": 1}], "edges": [{"id": "e", "from": "a", "to": "a", "length": "1/2"}]})");
  EXPECT_EQ(kind_of([&] { fiber_of(fractional); }), ErrorKind::NonSemistable);
}

TEST(Document, RoundTrip) {
  for (const char* text : {kLoop, kRaw}) {
    const GraphDocument doc = parse_document(text);
    EXPECT_EQ(parse_document(emit_document(doc)), doc);
  }
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    const NodalFiberSpec f = random_fiber(rng);
    const GraphDocument doc = document_of(f);
    const GraphDocument again = parse_document(emit_document(doc));
    EXPECT_EQ(again, doc);
    EXPECT_EQ(fiber_of(again), f);
    const PolarizedMetrizedGraph p = random_polarized_graph(rng);
    const GraphDocument raw = document_of(p);
    const PolarizedMetrizedGraph q = polarized_graph_of(parse_document(emit_document(raw)));
    EXPECT_EQ(q.k(), p.k());
    EXPECT_EQ(epsilon(q), epsilon(p));
  }
}

TEST(Document, Points) {
  const PolarizedMetrizedGraph p = polarized_graph_of(parse_document(kRaw));
  EXPECT_EQ(parse_point(p.model(), "b"), Point::at_vertex(1));
  const Point x = parse_point(p.model(), "edge:e1@1/2");
  EXPECT_EQ(x.edge, 0u);
  EXPECT_EQ(x.s, rational(1, 2));
  EXPECT_EQ(kind_of([&] { parse_point(p.model(), "zz"); }), ErrorKind::UnknownPoint);
  EXPECT_EQ(kind_of([&] { parse_point(p.model(), "edge:e1@2"); }), ErrorKind::UnknownPoint);
  EXPECT_EQ(kind_of([&] { parse_point(p.model(), "edge:e1"); }), ErrorKind::ParseError);
}

TEST(Report, RenderingIsExactAndStable) {
  Report r;
  r.add("epsilon", rational(2, 12), "epsilon invariant");
  r.add("delta", Rational(3));
  r.add_text("note", "tree");
  EXPECT_EQ(render(r, ReportFormat::Machine), "epsilon = 1/6\ndelta = 3\nnote = tree\n");
  const std::string approx = render(r, ReportFormat::Machine, 5);
  EXPECT_NE(approx.find("epsilon.approx = 0.16667"), std::string::npos);
  const std::string text = render(r, ReportFormat::Text, 3);
  EXPECT_NE(text.find("1/6  (approx 0.167)  # epsilon invariant"), std::string::npos) << text;
}
