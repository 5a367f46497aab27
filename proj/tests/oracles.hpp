#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's solvers; graphs are read only for their vertex and edge lists.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "arakgraph/graph.hpp"

namespace oracle {

using arakgraph::Rational;
using Matrix = std::vector<std::vector<Rational>>;

struct OEdge {
  std::size_t a, b;
  Rational length;
};

struct OGraph {
  std::size_t n = 0;
  std::vector<OEdge> edges;
};

inline OGraph from(const arakgraph::WeightedMultigraph& g) {
  OGraph o{g.vertex_count(), {}};
  for (const auto& e : g.edges()) o.edges.push_back({e.minus, e.plus, e.length});
  return o;
}

inline Matrix laplacian(const OGraph& g) {
  Matrix l(g.n, std::vector<Rational>(g.n, Rational(0)));
  for (const OEdge& e : g.edges) {
    if (e.a == e.b) continue;
    const Rational c = 1 / e.length;
    l[e.a][e.a] += c;
    l[e.b][e.b] += c;
    l[e.a][e.b] -= c;
    l[e.b][e.a] -= c;
  }
  return l;
}

/// Bareiss fraction-free determinant with row pivoting.
inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Rational sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline Matrix minor_without(const Matrix& m, const std::vector<std::size_t>& drop) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (std::find(drop.begin(), drop.end(), i) != drop.end()) continue;
    std::vector<Rational> row;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (std::find(drop.begin(), drop.end(), j) == drop.end()) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

/// Cramer-free inverse via the adjugate: inv(i,j) = (-1)^{i+j} det(M_ji) / det M.
inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  const Rational d = determinant(m);
  Matrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix sub;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Rational> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      inv[i][j] = ((i + j) % 2 == 0 ? 1 : -1) * determinant(sub) / d;
    }
  }
  return inv;
}

/// L+ = (L + J/n)^{-1} - J/n.
inline Matrix pseudoinverse(const OGraph& g) {
  Matrix m = laplacian(g);
  const Rational share = Rational(1) / static_cast<long>(g.n);
  for (auto& row : m)
    for (auto& x : row) x += share;
  Matrix inv = inverse(m);
  for (auto& row : inv)
    for (auto& x : row) x -= share;
  return inv;
}

/// Sum over spanning trees of the product of conductances, by enumeration.
inline Rational tree_count_enumerated(const OGraph& g) {
  const std::size_t m = g.edges.size();
  if (g.n == 1) return 1;
  Rational total = 0;
  std::vector<std::size_t> pick(g.n - 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == pick.size()) {
      std::vector<std::size_t> parent(g.n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      Rational product = 1;
      for (std::size_t k : pick) {
        const std::size_t a = find(g.edges[k].a), b = find(g.edges[k].b);
        if (a == b) return;
        parent[a] = b;
        product /= g.edges[k].length;
      }
      total += product;
      return;
    }
    for (std::size_t k = start; k < m; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return total;
}

/// Kirchhoff: r(x,y) = det L[-x,-y] / det L[-x].
inline Rational resistance(const OGraph& g, std::size_t x, std::size_t y) {
  if (x == y) return 0;
  const Matrix l = laplacian(g);
  return determinant(minor_without(l, {x, y})) / determinant(minor_without(l, {x}));
}

/// Foster: F(e) = 1 - r(e-, e+) / l(e).
inline Rational foster(const OGraph& g, std::size_t e) {
  return 1 - resistance(g, g.edges[e].a, g.edges[e].b) / g.edges[e].length;
}

/// Gaussian elimination with full rational arithmetic; A nonsingular.
inline std::vector<Rational> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t r = n; r-- > 0;) {
    Rational s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

/// Vertex values of the admissible Green's function g(x, .) for a polarized
/// graph. On each edge g'' equals the constant density rho_e of mu, so g is
/// the linear interpolant plus (rho/2) s (s - l); the vertex balance reads
/// (L g)(v) + sum_{e at v} rho_e l_e / 2 = delta_x(v) - mu_atom(v).
/// Normalized by int g mu = 0.
inline std::vector<Rational> admissible_green(const OGraph& g, const std::vector<Rational>& k,
                                              std::size_t x) {
  const std::size_t n = g.n;
  Rational deg = 0;
  for (const Rational& c : k) deg += c;
  const Rational h = deg / 2 + 1;

  std::vector<std::size_t> valence(n, 0);
  for (const OEdge& e : g.edges) {
    valence[e.a] += 1;
    valence[e.b] += 1;
  }
  std::vector<Rational> fost;
  for (std::size_t e = 0; e < g.edges.size(); ++e) fost.push_back(foster(g, e));

  std::vector<Rational> atom(n), rhs(n);
  for (std::size_t v = 0; v < n; ++v) {
    atom[v] = (k[v] + 2 - static_cast<long>(valence[v])) / (2 * h);
    rhs[v] = (v == x ? 1 : 0) - atom[v];
  }
  std::vector<Rational> rho;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    rho.push_back(fost[e] / (h * g.edges[e].length));
    rhs[g.edges[e].a] -= rho[e] * g.edges[e].length / 2;
    rhs[g.edges[e].b] -= rho[e] * g.edges[e].length / 2;
  }

  // Solve L g = rhs with the extra row: int g mu = 0. Replace the last
  // (redundant) equation by the normalization.
  Matrix a = laplacian(g);
  std::vector<Rational> row(n, Rational(0));
  Rational constant = 0;
  for (std::size_t v = 0; v < n; ++v) row[v] += atom[v];
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    // int_0^l (linear + (rho/2) s(s-l)) rho ds
    const OEdge& ed = g.edges[e];
    row[ed.a] += rho[e] * ed.length / 2;
    row[ed.b] += rho[e] * ed.length / 2;
    constant += rho[e] * rho[e] / 2 * (-ed.length * ed.length * ed.length / 6);
  }
  a[n - 1] = row;
  rhs[n - 1] = -constant;
  return solve(a, rhs);
}

/// Value at distance s from edge e's first endpoint, given vertex values.
inline Rational admissible_green_on_edge(const OGraph& g, const std::vector<Rational>& k,
                                         const std::vector<Rational>& values, std::size_t e,
                                         const Rational& s) {
  Rational deg = 0;
  for (const Rational& c : k) deg += c;
  const Rational h = deg / 2 + 1;
  const OEdge& ed = g.edges[e];
  const Rational rho = foster(g, e) / (h * ed.length);
  return values[ed.a] + (values[ed.b] - values[ed.a]) * s / ed.length + rho / 2 * s * (s - ed.length);
}

/// Splits edge e at distance s from its first endpoint; the new vertex is
/// appended with polarization 0.
inline std::size_t split(OGraph& g, std::vector<Rational>& k, std::size_t e, const Rational& s) {
  const std::size_t y = g.n++;
  k.push_back(0);
  const OEdge old = g.edges[e];
  g.edges[e] = {old.a, y, s};
  g.edges.push_back({y, old.b, old.length - s});
  return y;
}

/// Simpson's rule on [a, b]; exact for cubics.
template <class F>
Rational simpson(F f, const Rational& a, const Rational& b) {
  return (b - a) / 6 * (f(a) + 4 * f((a + b) / 2) + f(b));
}

}  // namespace oracle
