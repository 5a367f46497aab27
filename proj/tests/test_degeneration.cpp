#include <gtest/gtest.h>

#include "arakgraph/random.hpp"
#include "oracles.hpp"

using namespace arakgraph;

namespace {

NodalFiberSpec separating(long h, long i) {
  return {{{"a", i}, {"b", h - i}}, {{"e", "a", "b", 1}}, {{"P", "a"}, {"Q", "b"}}};
}

NodalFiberSpec nonseparating(long h) {
  return {{{"v", h - 1}}, {{"e", "v", "v", 1}}, {{"P", "v"}}};
}

NodalFiberSpec smooth(long h) { return {{{"c", h}}, {}, {{"P", "c"}, {"Q", "c"}}}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IdentityViolation;
}

}  // namespace

TEST(DualGraph, Examples) {
  const PolarizedMetrizedGraph sep = polarized_graph_of(separating(2, 1));
  EXPECT_EQ(sep.genus(), 2);
  EXPECT_EQ(sep.k()[0], 1);
  EXPECT_EQ(sep.k()[1], 1);
  const PolarizedMetrizedGraph loop = polarized_graph_of(nonseparating(2));
  EXPECT_EQ(loop.genus(), 2);
  EXPECT_EQ(loop.k()[0], 2);
  const PolarizedMetrizedGraph point = polarized_graph_of(smooth(1));
  EXPECT_TRUE(point.graph().is_point());
  EXPECT_EQ(point.k()[0], 0);
  EXPECT_EQ(point.genus(), 1);
}

TEST(DualGraph, Errors) {
  const NodalFiberSpec tail{{{"a", 2}, {"t", 0}}, {{"e", "a", "t", 1}}, {}};
  EXPECT_EQ(kind_of([&] { polarized_graph_of(tail); }), ErrorKind::NonSemistable);
  const NodalFiberSpec rational_curve{{{"c", 0}}, {}, {}};
  EXPECT_EQ(kind_of([&] { polarized_graph_of(rational_curve); }), ErrorKind::GenusZero);
  const NodalFiberSpec zero_mult{{{"a", 1}, {"b", 1}}, {{"e", "a", "b", 0}}, {}};
  EXPECT_EQ(kind_of([&] { polarized_graph_of(zero_mult); }), ErrorKind::NonPositiveLength);
  const NodalFiberSpec apart{{{"a", 1}, {"b", 1}}, {}, {}};
  EXPECT_EQ(kind_of([&] { polarized_graph_of(apart); }), ErrorKind::DisconnectedGraph);
}

TEST(Desingularize, Examples) {
  const NodalFiberSpec triple{{{"a", 1}, {"b", 1}}, {{"e", "a", "b", 3}}, {}};
  const NodalFiberSpec d = desingularize(triple);
  ASSERT_EQ(d.components.size(), 4u);
  ASSERT_EQ(d.nodes.size(), 3u);
  EXPECT_EQ(d.components[2].genus, 0);
  EXPECT_EQ(d.nodes[0].a, "a");
  EXPECT_EQ(d.nodes[0].b, d.components[2].id);
  EXPECT_EQ(d.nodes[1].b, d.components[3].id);
  EXPECT_EQ(d.nodes[2].b, "b");
  for (const auto& n : d.nodes) EXPECT_EQ(n.multiplicity, 1);
  EXPECT_EQ(desingularize(d), d);
  EXPECT_EQ(desingularize(separating(3, 1)), separating(3, 1));

  const NodalFiberSpec self{{{"v", 1}}, {{"e", "v", "v", 2}}, {}};
  const PolarizedMetrizedGraph p = polarized_graph_of(self);
  const PolarizedMetrizedGraph q = polarized_graph_of(desingularize(self));
  EXPECT_EQ(q.model().vertex_count(), 2u);
  EXPECT_EQ(epsilon(p), epsilon(q));
  EXPECT_EQ(p.tau(), q.tau());
  EXPECT_EQ(green_admissible(p, Point::at_vertex(0), Point::at_vertex(0)),
            green_admissible(q, Point::at_vertex(0), Point::at_vertex(0)));
  EXPECT_NE(eta(p.graph()), eta(q.graph()));
}

TEST(Desingularize, NameCollisionsAreAvoided) {
  const NodalFiberSpec f{{{"a", 1}, {"e.1", 1}}, {{"e", "a", "e.1", 2}}, {}};
  const NodalFiberSpec d = desingularize(f);
  EXPECT_EQ(d.components.size(), 3u);
  EXPECT_NO_THROW(polarized_graph_of(d));
}

TEST(Lear, SeparatingGenusTwo) {
  const LearReport r = lear_coefficients(separating(2, 1), std::string("P"), std::string("Q"));
  EXPECT_EQ(r.omegaOmega, -1);
  EXPECT_EQ(*r.POmega, rational(-1, 4));
  EXPECT_EQ(*r.PQ, rational(-1, 4));
  EXPECT_EQ(*r.deltaB, -1);
  EXPECT_EQ(*r.kappaB, -1);
  EXPECT_EQ(*r.deltaPBsq, -3);
}

TEST(Lear, NonSeparatingGenusTwo) {
  const LearReport r = lear_coefficients(nonseparating(2), std::string("P"));
  EXPECT_EQ(r.omegaOmega, rational(-1, 6));
  EXPECT_EQ(*r.POmega, rational(-1, 48));
  EXPECT_EQ(*r.deltaPBsq, rational(-1, 3));
  EXPECT_EQ(*r.deltaPBsq_ofLears, rational(-1, 3) + rational(1, 3));
  EXPECT_FALSE(r.PQ.has_value());
}

TEST(Lear, SmoothFiberIsZero) {
  const LearReport r = lear_coefficients(smooth(3), std::string("P"), std::string("Q"));
  for (const auto& [key, value] : r.entries()) EXPECT_EQ(value, 0) << key;
}

TEST(Lear, MissingSection) {
  EXPECT_EQ(kind_of([] { lear_coefficients(nonseparating(2), std::string("Z")); }),
            ErrorKind::MissingSection);
  EXPECT_EQ(kind_of([] { lear_coefficients(nonseparating(2), std::nullopt, std::string("P")); }),
            ErrorKind::MissingSection);
}

TEST(Asymptotics, DeltaSlopes) {
  for (long h = 2; h <= 6; ++h) {
    const AsymptoticsReport n = delta_asymptotics(nonseparating(h));
    EXPECT_EQ(n.deltaSlope, rational(4 * h - 1, 3 * h));
    EXPECT_EQ(n.bettiNumber, 1u);
    EXPECT_EQ(n.treeConstant, 1);
    EXPECT_NE(n.note.find("non-tree"), std::string::npos);
    for (long i = 1; i < h; ++i) {
      const AsymptoticsReport s = delta_asymptotics(separating(h, i));
      EXPECT_EQ(s.deltaSlope, rational(4 * i * (h - i), h));
      EXPECT_EQ(s.note.rfind("tree", 0), 0u);
    }
  }
  EXPECT_EQ(delta_asymptotics(smooth(2)).deltaSlope, 0);
  EXPECT_EQ(kind_of([] { delta_asymptotics({{{"c", 0}}, {}, {}}); }), ErrorKind::GenusZero);
}

TEST(Asymptotics, ArakelovSlopes) {
  EXPECT_EQ(arakelov_asymptotics(separating(2, 1), "P").metricSlope, rational(-1, 4));
  EXPECT_EQ(*arakelov_asymptotics(separating(2, 1), "P", std::string("Q")).greenSlope,
            rational(-1, 4));
  EXPECT_EQ(arakelov_asymptotics(nonseparating(2), "P").metricSlope, rational(-1, 48));
  EXPECT_EQ(kind_of([] { arakelov_asymptotics(separating(2, 1), "P", std::string("P")); }),
            ErrorKind::CoincidentSections);
  EXPECT_EQ(kind_of([] { arakelov_asymptotics(separating(2, 1), "R"); }),
            ErrorKind::MissingSection);
  // Distinct sections through the same component are allowed.
  EXPECT_EQ(*arakelov_asymptotics(smooth(2), "P", std::string("Q")).greenSlope, 0);
}

TEST(SplitEdge, DirectMatchesFormula) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 25; ++i) {
    const NodalFiberSpec f = random_fiber(rng);
    if (f.nodes.empty()) continue;
    const auto& node = f.nodes[detail::uniform(rng, 0, static_cast<long>(f.nodes.size()) - 1)];
    const Rational a = rational(detail::uniform(rng, 1, 9), detail::uniform(rng, 1, 9));
    const Rational b = rational(detail::uniform(rng, 1, 9), detail::uniform(rng, 1, 9));
    const VertexId x = detail::uniform(rng, 0, static_cast<long>(f.components.size()) - 1);
    EXPECT_EQ(split_edge_resistance(f, node.id, a, b, x), split_edge_resistance_formula(f, node.id, a, b, x));
  }
}

TEST(SplitEdge, BridgeIsLinearAndEndpointLimits) {
  const NodalFiberSpec f = separating(3, 1);
  const Rational one = split_edge_resistance(f, "e", Rational(1), Rational(2), 0);
  EXPECT_EQ(split_edge_resistance(f, "e", Rational(2), Rational(4), 0), 2 * one);
  EXPECT_EQ(one, 1);  // r(a, y) = a l(e) on the scaled bridge
  const NodalFiberSpec banana{{{"a", 1}, {"b", 1}}, {{"e1", "a", "b", 1}, {"e2", "a", "b", 1}}, {}};
  const Rational tiny = rational(1, 1000000);
  const Rational near = split_edge_resistance(banana, "e1", Rational(1), tiny, 0);
  // r(a, b) a + F l ab/(a+b) with r(a,b) = 1/2, F = 1/2
  EXPECT_EQ(near, rational(1, 2) + rational(1, 2) * tiny / (1 + tiny));
  EXPECT_EQ(split_edge_resistance(banana, "e1", Rational(1), Rational(1), 0),
            split_edge_resistance_formula(banana, "e1", Rational(1), Rational(1), 0));
}

TEST(LimitMeasure, EqualsAdmissibleMeasure) {
  const Current loop = limit_measure(nonseparating(2));
  EXPECT_EQ(loop.vertex_atom(0), rational(1, 2));
  EXPECT_EQ(loop.total_mass(), 1);
  EXPECT_EQ(loop.densities()[0](Rational(0)), rational(1, 2));
  EXPECT_EQ(limit_measure(smooth(4)).vertex_atom(0), 1);
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    const NodalFiberSpec f = random_fiber(rng);
    EXPECT_EQ(limit_measure(f), admissible_measure(polarized_graph_of(f)));
  }
}

TEST(FiberIdentities, RandomFibers) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const NodalFiberSpec f = random_fiber(rng);
    const IdentityReport report = verify_fiber(f, rng);
    for (const IdentityCheck& c : report.checks) EXPECT_TRUE(c.passed()) << c.name;
  }
}
