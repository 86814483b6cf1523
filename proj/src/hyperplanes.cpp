#include "cubik/hyperplanes.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <map>
#include <string>

#include "cubik/error.hpp"
#include "cubik/median.hpp"

namespace cubik {

namespace {

std::size_t edge_index(const std::vector<Edge>& edges, VertexId a, VertexId b) {
  Edge e{std::min(a, b), std::max(a, b)};
  return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
}

// Class id per edge (indexed like g.edges()), classes ordered by minimum edge.
std::vector<int> edge_classes(const CubeComplex& c, const std::vector<Edge>& edges, int& num_classes) {
  const std::size_t m = edges.size();
  boost::disjoint_sets_with_storage<> ds(m);
  for (std::size_t i = 0; i < m; ++i) ds.make_set(i);
  for (const Cube& q : c.cubes()) {
    if (q.dim != 2) continue;
    const auto& k = q.corners;
    ds.union_set(edge_index(edges, k[0], k[1]), edge_index(edges, k[2], k[3]));
    ds.union_set(edge_index(edges, k[0], k[2]), edge_index(edges, k[1], k[3]));
  }
  std::vector<int> cls(m, -1);
  std::map<std::size_t, int> root_class;
  num_classes = 0;
  for (std::size_t i = 0; i < m; ++i) {
    auto [it, inserted] = root_class.emplace(ds.find_set(i), num_classes);
    if (inserted) ++num_classes;
    cls[i] = it->second;
  }
  return cls;
}

std::vector<VertexId> component(const Graph& g, VertexId start, const std::vector<std::vector<int>>& adj_class,
                                int h) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack{start}, out;
  seen[start] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (adj_class[v][i] == h || seen[nb[i]]) continue;
      seen[nb[i]] = 1;
      stack.push_back(nb[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> adjacency_classes(const Graph& g, const std::vector<Edge>& edges,
                                                const std::vector<int>& cls) {
  std::vector<std::vector<int>> out(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId w : g.neighbors(v)) out[v].push_back(cls[edge_index(edges, v, w)]);
  }
  return out;
}

std::array<Halfspace, 2> split(const CubeComplex& c, const Hyperplane& h,
                               const std::vector<std::vector<int>>& adj_class) {
  const Graph& g = c.graph();
  const Edge& e = h.dual_edges.front();
  auto a = component(g, e.u, adj_class, h.id);
  auto b = component(g, e.v, adj_class, h.id);
  std::vector<VertexId> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  if (!both.empty() || a.size() + b.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw Error(ErrorCode::kNotTwoComponents, "hyperplane " + std::to_string(h.id) + " does not split the complex in two");
  }
  return {Halfspace{h.id, 0, std::move(a)}, Halfspace{h.id, 1, std::move(b)}};
}

}  // namespace

std::vector<Hyperplane> compute_hyperplanes(const CubeComplex& c) {
  auto edges = c.graph().edges();
  int k = 0;
  auto cls = edge_classes(c, edges, k);
  std::vector<Hyperplane> out(k);
  for (int h = 0; h < k; ++h) out[h].id = h;
  for (std::size_t i = 0; i < edges.size(); ++i) out[cls[i]].dual_edges.push_back(edges[i]);
  return out;
}

std::array<Halfspace, 2> halfspaces(const CubeComplex& c, const Hyperplane& h) {
  auto edges = c.graph().edges();
  std::vector<int> cls(edges.size(), -1);
  for (const Edge& e : h.dual_edges) cls[edge_index(edges, e.u, e.v)] = h.id;
  return split(c, h, adjacency_classes(c.graph(), edges, cls));
}

Graph crossing_graph(const CubeComplex& c, std::span<const Hyperplane> hs) {
  std::map<Edge, int> owner;
  for (const Hyperplane& h : hs) {
    for (const Edge& e : h.dual_edges) owner[e] = h.id;
  }
  auto of = [&](VertexId a, VertexId b) { return owner.at(Edge{std::min(a, b), std::max(a, b)}); };
  std::vector<Edge> cross;
  for (const Cube& q : c.cubes()) {
    if (q.dim != 2) continue;
    int x = of(q.corners[0], q.corners[1]), y = of(q.corners[0], q.corners[2]);
    if (x != y) cross.push_back({std::min(x, y), std::max(x, y)});
  }
  std::sort(cross.begin(), cross.end());
  cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
  return Graph::from_edges(static_cast<int>(hs.size()), cross);
}

HyperplaneStructure::HyperplaneStructure(const CubeComplex& c, bool check_cat0) : graph_(c.graph()) {
  if (check_cat0) {
    auto v = is_cat0(c);
    if (!v.cat0) throw Error(ErrorCode::kNotCat0, v.reason);
  }
  auto edges = c.graph().edges();
  int k = 0;
  auto cls = edge_classes(c, edges, k);
  hyperplanes_.resize(k);
  for (int h = 0; h < k; ++h) hyperplanes_[h].id = h;
  for (std::size_t i = 0; i < edges.size(); ++i) hyperplanes_[cls[i]].dual_edges.push_back(edges[i]);
  adjacent_class_ = adjacency_classes(c.graph(), edges, cls);
  const int n = c.num_vertices();
  for (const Hyperplane& h : hyperplanes_) {
    halfspaces_.push_back(split(c, h, adjacent_class_));
    for (int s = 0; s < 2; ++s) {
      VertexSet bits(n);
      for (VertexId v : halfspaces_.back()[s].vertices) bits.set(v);
      side_bits_.push_back(std::move(bits));
    }
  }
  crossing_ = crossing_graph(c, hyperplanes_);
}

int HyperplaneStructure::hyperplane_of(VertexId u, VertexId v) const {
  const auto& nb = graph_.neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return adjacent_class_[u][it - nb.begin()];
}

int width(const HyperplaneStructure& s) {
  const int m = 2 * s.size();
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  auto bits = [&](int i) -> const VertexSet& { return s.side_set(i / 2, i % 2); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return bits(a).count() < bits(b).count(); });
  std::vector<int> chain(m, 1);
  int best = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      if (bits(order[j]).is_proper_subset_of(bits(order[i]))) chain[i] = std::max(chain[i], chain[j] + 1);
    }
    best = std::max(best, chain[i]);
  }
  return best;
}

int width(const CubeComplex& c) { return width(HyperplaneStructure(c)); }

std::vector<ExtremalHyperplane> extremal_hyperplanes(const HyperplaneStructure& s) {
  const int m = 2 * s.size();
  std::vector<char> minimal(m, 1);
  for (int i = 0; i < m; ++i) {
    const VertexSet& a = s.side_set(i / 2, i % 2);
    for (int j = 0; j < m && minimal[i]; ++j) {
      if (j != i && s.side_set(j / 2, j % 2).is_proper_subset_of(a)) minimal[i] = 0;
    }
  }
  std::vector<ExtremalHyperplane> out;
  for (int h = 0; h < s.size(); ++h) {
    bool m0 = minimal[2 * h], m1 = minimal[2 * h + 1];
    if (!m0 && !m1) continue;
    int side = m0 ? 0 : 1;
    if (m0 && m1) {
      const auto& a = s.halfspace(h, 0).vertices;
      const auto& b = s.halfspace(h, 1).vertices;
      if (a.size() != b.size()) {
        side = a.size() < b.size() ? 0 : 1;
      } else {
        side = a.front() < b.front() ? 0 : 1;
      }
    }
    out.push_back({h, side});
  }
  return out;
}

std::vector<ExtremalHyperplane> extremal_hyperplanes(const CubeComplex& c) {
  return extremal_hyperplanes(HyperplaneStructure(c));
}

std::vector<int> separating_hyperplanes(const HyperplaneStructure& s, VertexId u, VertexId v) {
  std::vector<int> out;
  for (int h = 0; h < s.size(); ++h) {
    if (s.side_of(h, u) != s.side_of(h, v)) out.push_back(h);
  }
  return out;
}

std::vector<int> separating_hyperplanes(const CubeComplex& c, VertexId u, VertexId v) {
  if (!c.graph().contains(u) || !c.graph().contains(v)) {
    throw Error(ErrorCode::kUnknownVertex, "vertex out of range");
  }
  return separating_hyperplanes(HyperplaneStructure(c), u, v);
}

}  // namespace cubik
