#include "cubik/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cubik/error.hpp"

namespace cubik {

namespace {

using CubeList = std::vector<std::vector<VertexId>>;

CubeComplex from_edges(int n, const std::vector<Edge>& edges) {
  CubeList raw;
  for (const Edge& e : edges) raw.push_back({e.u, e.v});
  return CubeComplex::build(n, raw);
}

}  // namespace

CubeComplex path_complex(int n) {
  if (n < 0) throw Error(ErrorCode::kBadParams, "path length must be >= 0");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, i + 1});
  return from_edges(n + 1, edges);
}

CubeComplex tree_complex(int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::kBadParams, "tree size must be >= 0");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({rng.below(i), i});
  return from_edges(n + 1, edges);
}

CubeComplex hypercube(int n) {
  if (n < 0 || n > kMaxDimension) throw Error(ErrorCode::kBadParams, "hypercube dimension must be in 0..16");
  std::vector<VertexId> corners(std::size_t{1} << n);
  std::iota(corners.begin(), corners.end(), 0);
  CubeList raw{corners};
  return CubeComplex::build(static_cast<int>(corners.size()), raw);
}

CubeComplex grid(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::kBadParams, "grid sides must be >= 1");
  CubeList raw;
  for (int y = 0; y < b; ++y) {
    for (int x = 0; x < a; ++x) {
      int id = x + (a + 1) * y;
      raw.push_back({id, id + 1, id + a + 1, id + a + 2});
    }
  }
  return CubeComplex::build((a + 1) * (b + 1), raw);
}

CubeComplex tricorner() {
  CubeList raw{{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6}};
  return CubeComplex::build(7, raw);
}

CubeComplex hollow_square() { return from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

CubeComplex lshape() {
  CubeList raw{{0, 1, 3, 4}, {1, 2, 4, 5}, {3, 4, 6, 7}};
  return CubeComplex::build(8, raw);
}

Graph k23_graph() {
  std::vector<Edge> edges;
  for (VertexId hub : {0, 1}) {
    for (VertexId v : {2, 3, 4}) edges.push_back({hub, v});
  }
  return Graph::from_edges(5, edges);
}

CubeComplex standard(const std::string& kind, int n, int a, int b, std::uint64_t seed) {
  if (kind == "path") return path_complex(n);
  if (kind == "tree") return tree_complex(n, seed);
  if (kind == "hypercube") return hypercube(n);
  if (kind == "grid") return grid(a, b);
  if (kind == "k23") {
    Graph g = k23_graph();
    return from_edges(g.num_vertices(), g.edges());
  }
  if (kind == "tricorner") return tricorner();
  if (kind == "hollow_square") return hollow_square();
  if (kind == "lshape") return lshape();
  throw Error(ErrorCode::kBadParams, "unknown generator '" + kind + "'");
}

Graph mycielski(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    edges.push_back(e);
    edges.push_back({e.u, n + e.v});
    edges.push_back({e.v, n + e.u});
  }
  for (VertexId v = 0; v < n; ++v) edges.push_back({n + v, 2 * n});
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(2 * n + 1, edges);
}

Graph mycielski_iterate(int k) {
  if (k < 1) throw Error(ErrorCode::kBadParams, "Mycielski index must be >= 1");
  std::vector<Edge> k2{{0, 1}};
  Graph g = Graph::from_edges(2, k2);
  for (int i = 1; i < k; ++i) g = mycielski(g);
  return g;
}

std::vector<std::vector<VertexId>> cliques(const Graph& g) {
  std::vector<std::vector<VertexId>> out{{}};
  // extend each clique by larger vertices adjacent to all members
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto base = out[i];
    VertexId from = base.empty() ? 0 : base.back() + 1;
    for (VertexId v = from; v < g.num_vertices(); ++v) {
      bool ok = std::all_of(base.begin(), base.end(), [&](VertexId u) { return g.adjacent(u, v); });
      if (!ok) continue;
      auto next = base;
      next.push_back(v);
      out.push_back(std::move(next));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

CubeComplex simplex_graph(const Graph& g) {
  auto all = cliques(g);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[j].size() != all[i].size() + 1) continue;
      if (std::includes(all[j].begin(), all[j].end(), all[i].begin(), all[i].end())) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
      }
    }
  }
  return completion_from_graph(Graph::from_edges(static_cast<int>(all.size()), edges));
}

RandomCollapsible random_collapsible(std::uint64_t seed, int steps, int max_cuboids, int max_vertices) {
  if (steps < 0 || max_cuboids < 1 || max_vertices < 1) {
    throw Error(ErrorCode::kBadParams, "need steps >= 0, max_cuboids >= 1, max_vertices >= 1");
  }
  Rng rng(seed);
  CubeList none;
  RandomCollapsible out{CubeComplex::build(1, none), {}};
  std::vector<CollapseStep> expansion;
  for (int s = 0; s < steps; ++s) {
    const CubeComplex& c = out.complex;
    const int want = 1 + rng.below(max_cuboids);
    std::vector<std::vector<VertexId>> chosen;
    std::vector<char> used(c.num_vertices(), 0);
    int budget = max_vertices - c.num_vertices();
    for (int attempt = 0; attempt < 4 * want && static_cast<int>(chosen.size()) < want; ++attempt) {
      const Cube& q = c.cube(rng.below(static_cast<int>(c.num_cubes())));
      const unsigned full = (1u << q.dim) - 1;
      const unsigned free_mask = static_cast<unsigned>(rng.next()) & full;
      const unsigned offset = static_cast<unsigned>(rng.next()) & full & ~free_mask;
      std::vector<VertexId> face;
      for (unsigned i = 0; i < q.corners.size(); ++i) {
        if ((i & ~free_mask) == offset) face.push_back(q.corners[i]);
      }
      if (static_cast<int>(face.size()) > budget) continue;
      if (std::any_of(face.begin(), face.end(), [&](VertexId v) { return used[v]; })) continue;
      for (VertexId v : face) used[v] = 1;
      budget -= static_cast<int>(face.size());
      std::sort(face.begin(), face.end());
      chosen.push_back(std::move(face));
    }
    if (chosen.empty()) break;
    Expansion e = expand_step(c, chosen);
    CollapseStep step;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (std::size_t j = 0; j < chosen[i].size(); ++j) step.new_vertices.emplace_back(chosen[i][j], e.fresh[i][j]);
    }
    step.cuboids = std::move(chosen);
    expansion.push_back(std::move(step));
    out.complex = std::move(e.complex);
  }
  out.decomposition.base_vertex = 0;
  out.decomposition.steps.assign(expansion.rbegin(), expansion.rend());
  return out;
}

Graph random_triangle_free(std::uint64_t seed, int n, int edges) {
  Rng rng(seed);
  std::vector<Edge> all;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  // Fisher–Yates with the documented draw
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(static_cast<int>(i))]);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<Edge> kept;
  for (const Edge& e : all) {
    if (static_cast<int>(kept.size()) >= edges) break;
    bool triangle = false;
    for (VertexId w = 0; w < n && !triangle; ++w) triangle = adj[e.u][w] && adj[e.v][w];
    if (triangle) continue;
    adj[e.u][e.v] = adj[e.v][e.u] = 1;
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  return Graph::from_edges(n, kept);
}

}  // namespace cubik
