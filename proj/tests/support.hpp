#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubik/complex.hpp"
#include "cubik/error.hpp"
#include "cubik/generators.hpp"

namespace cubik::testing {

// Code of the cubik::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline PointLocation vertex_point(const CubeComplex& c, VertexId v) { return {c.vertex_cube(v), {}}; }

inline PointLocation random_point(const CubeComplex& c, Rng& rng) {
  const auto m = c.maximal_cubes();
  const CubeId k = m[rng.below(static_cast<int>(m.size()))];
  std::vector<double> x(c.cube(k).dim);
  for (double& v : x) v = rng.unit();
  return canonical_point(c, {k, x});
}

// A point on a random face: some coordinates pinned to 0 or 1.
inline PointLocation random_boundary_point(const CubeComplex& c, Rng& rng) {
  const auto m = c.maximal_cubes();
  const CubeId k = m[rng.below(static_cast<int>(m.size()))];
  std::vector<double> x(c.cube(k).dim);
  for (double& v : x) {
    const int r = rng.below(3);
    v = r == 0 ? 0.0 : r == 1 ? 1.0 : rng.unit();
  }
  return canonical_point(c, {k, x});
}

inline std::vector<std::pair<std::string, CubeComplex>> small_cat0_corpus() {
  std::vector<std::pair<std::string, CubeComplex>> out;
  out.emplace_back("square", hypercube(2));
  out.emplace_back("strip", grid(2, 1));
  out.emplace_back("q3", hypercube(3));
  out.emplace_back("lshape", lshape());
  out.emplace_back("grid33", grid(3, 3));
  out.emplace_back("path", path_complex(5));
  out.emplace_back("tree", tree_complex(12, 4));
  out.emplace_back("random", random_collapsible(7, 8, 3, 40).complex);
  return out;
}

}  // namespace cubik::testing

namespace cubik::testing {

// Backtracking graph isomorphism for small graphs.
inline bool isomorphic(const Graph& a, const Graph& b) {
  const int n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  std::vector<int> da(n), db(n);
  for (int v = 0; v < n; ++v) da[v] = a.degree(v), db[v] = b.degree(v);
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || da[v] != db[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = a.adjacent(u, v) == b.adjacent(map[u], w);
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return extend(0);
}

}  // namespace cubik::testing
