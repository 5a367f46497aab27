#pragma once

// Seeded generators for graphs, polarizations and fibers. Draws go through
// detail::uniform rather than std::uniform_int_distribution so a seed gives
// the same objects with every standard library.

#include <cstdint>
#include <random>
#include <string>

#include "arakgraph/degeneration.hpp"

namespace arakgraph {

struct RandomGraphLimits {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 14;
  long max_numerator = 20;
  long max_denominator = 20;
};

struct RandomFiberLimits {
  std::size_t max_components = 5;
  std::size_t max_nodes = 6;
  long max_genus = 2;
  long max_multiplicity = 5;
};

namespace detail {

/// Uniform integer in [lo, hi] by rejection on the raw 64-bit output.
inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return lo + static_cast<long>(draw % span);
}

/// Vertex/edge skeleton: a random spanning tree plus random extra edges,
/// loops and parallel edges included.
inline std::vector<std::pair<VertexId, VertexId>> random_skeleton(std::mt19937_64& rng,
                                                                  std::size_t n,
                                                                  std::size_t m) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId v = 1; v < n; ++v) {
    out.emplace_back(static_cast<VertexId>(uniform(rng, 0, static_cast<long>(v) - 1)), v);
  }
  while (out.size() < m) {
    const auto a = static_cast<VertexId>(uniform(rng, 0, static_cast<long>(n) - 1));
    const auto b = static_cast<VertexId>(uniform(rng, 0, static_cast<long>(n) - 1));
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace detail

inline WeightedMultigraph random_graph(std::mt19937_64& rng, const RandomGraphLimits& lim = {}) {
  const auto n = static_cast<std::size_t>(detail::uniform(rng, 1, static_cast<long>(lim.max_vertices)));
  const long min_edges = static_cast<long>(n) - 1;
  const auto m = static_cast<std::size_t>(
      detail::uniform(rng, std::max(min_edges, 1L), static_cast<long>(lim.max_edges)));
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (const auto& [a, b] : detail::random_skeleton(rng, n, m)) {
    const long num = detail::uniform(rng, 1, lim.max_numerator);
    const long den = detail::uniform(rng, 1, lim.max_denominator);
    edges.push_back({"e" + std::to_string(k++), a, b, rational(num, den)});
  }
  return WeightedMultigraph(std::move(names), std::move(edges));
}

/// Either the canonical-type divisor v(x) - 2 + 2q(x) for random q, or an
/// arbitrary nonnegative divisor of even degree.
inline VertexDivisor random_polarization(std::mt19937_64& rng, const WeightedMultigraph& g) {
  VertexDivisor k(g.vertex_count());
  if (detail::uniform(rng, 0, 1) == 0) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      long q = detail::uniform(rng, 0, 2);
      const long valence = static_cast<long>(g.valence(v));
      if (valence - 2 + 2 * q < 0) q = 1;
      k[v] = valence - 2 + 2 * q;
    }
    return k;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) k[v] = detail::uniform(rng, 0, 3);
  if (k.degree().get_num() % 2 != 0) k[0] += 1;
  return k;
}

inline PolarizedMetrizedGraph random_polarized_graph(std::mt19937_64& rng,
                                                     const RandomGraphLimits& lim = {}) {
  WeightedMultigraph g = random_graph(rng, lim);
  VertexDivisor k = random_polarization(rng, g);
  return PolarizedMetrizedGraph(MetrizedGraph(std::move(g)), std::move(k));
}

/// A semistable fiber of positive genus with sections P and Q.
inline NodalFiberSpec random_fiber(std::mt19937_64& rng, const RandomFiberLimits& lim = {}) {
  const auto n =
      static_cast<std::size_t>(detail::uniform(rng, 1, static_cast<long>(lim.max_components)));
  const auto m = static_cast<std::size_t>(detail::uniform(
      rng, static_cast<long>(n) - 1, std::max(static_cast<long>(n) - 1, static_cast<long>(lim.max_nodes))));
  NodalFiberSpec fiber;
  for (std::size_t v = 0; v < n; ++v) {
    fiber.components.push_back({"c" + std::to_string(v), detail::uniform(rng, 0, lim.max_genus)});
  }
  std::vector<long> valence(n, 0);
  std::size_t k = 0;
  for (const auto& [a, b] : detail::random_skeleton(rng, n, m)) {
    fiber.nodes.push_back({"n" + std::to_string(k++), fiber.components[a].id,
                           fiber.components[b].id, detail::uniform(rng, 1, lim.max_multiplicity)});
    valence[a] += 1;
    valence[b] += 1;
  }
  long h = static_cast<long>(m) - static_cast<long>(n) + 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (valence[v] < 2 && fiber.components[v].genus == 0) fiber.components[v].genus = 1;
    h += fiber.components[v].genus;
  }
  if (h == 0) fiber.components[0].genus = 1;
  fiber.sections["P"] = fiber.components[detail::uniform(rng, 0, static_cast<long>(n) - 1)].id;
  fiber.sections["Q"] = fiber.components[detail::uniform(rng, 0, static_cast<long>(n) - 1)].id;
  return fiber;
}

}  // namespace arakgraph
