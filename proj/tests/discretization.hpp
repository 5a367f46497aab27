#pragma once

// Floating-point approximation of g(x, x) on a polarized metrized graph:
// every edge is cut into N equal cells, the admissible measure is lumped
// onto the fine vertices (each cell's mass goes to its node nearer the
// edge's first endpoint) and the fine vertex-Laplacian Poisson problem is
// solved with a sparse Cholesky factorization.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "oracles.hpp"

namespace oracle {

inline double discrete_green_diagonal(const OGraph& g, const std::vector<Rational>& k,
                                      std::size_t x, std::size_t cells) {
  Rational deg = 0;
  for (const Rational& c : k) deg += c;
  const double h = Rational(deg / 2 + 1).get_d();

  std::vector<long> valence(g.n, 0);
  for (const OEdge& e : g.edges) {
    valence[e.a] += 1;
    valence[e.b] += 1;
  }
  std::vector<double> mass(g.n);
  for (std::size_t v = 0; v < g.n; ++v) mass[v] = (k[v].get_d() + 2.0 - valence[v]) / (2 * h);

  std::vector<Eigen::Triplet<double>> entries;
  auto connect = [&](std::size_t a, std::size_t b, double conductance) {
    entries.emplace_back(a, a, conductance);
    entries.emplace_back(b, b, conductance);
    entries.emplace_back(a, b, -conductance);
    entries.emplace_back(b, a, -conductance);
  };

  std::size_t n = g.n;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const OEdge& edge = g.edges[e];
    const double length = edge.length.get_d();
    const double cell = length / static_cast<double>(cells);
    const double cell_mass = foster(g, e).get_d() / (h * length) * cell;
    std::size_t previous = edge.a;
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t next = edge.b;
      if (c + 1 < cells) {
        next = n++;
        mass.push_back(0.0);
      }
      connect(previous, next, 1.0 / cell);
      mass[previous] += cell_mass;
      previous = next;
    }
  }

  // Ground one vertex, solve, then restore the normalization sum m u = 0.
  const std::size_t ground = x == 0 ? 1 : 0;
  if (n == 1) return 0.0;
  auto reduced = [&](std::size_t i) { return i < ground ? i : i - 1; };
  std::vector<Eigen::Triplet<double>> kept;
  for (const auto& t : entries) {
    const auto r = static_cast<std::size_t>(t.row());
    const auto c = static_cast<std::size_t>(t.col());
    if (r == ground || c == ground) continue;
    kept.emplace_back(reduced(r), reduced(c), t.value());
  }
  Eigen::SparseMatrix<double> l(n - 1, n - 1);
  l.setFromTriplets(kept.begin(), kept.end());
  Eigen::VectorXd rhs(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == ground) continue;
    rhs(reduced(i)) = (i == x ? 1.0 : 0.0) - mass[i];
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(l);
  const Eigen::VectorXd u = solver.solve(rhs);

  auto value = [&](std::size_t i) { return i == ground ? 0.0 : u(reduced(i)); };
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += mass[i] * value(i);
  return value(x) - mean;
}

}  // namespace oracle
