#include "cubik/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "cubik/error.hpp"

namespace cubik {

void Graph::insert_edge(VertexId u, VertexId v) {
  if (!contains(u) || !contains(v)) {
    throw Error(ErrorCode::kUnknownVertex, "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  if (u == v) throw Error(ErrorCode::kBadInput, "loop at vertex " + std::to_string(u));
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) {
    throw Error(ErrorCode::kBadInput, "duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
}

Graph Graph::from_edges(int num_vertices, std::span<const Edge> edges) {
  Graph g(num_vertices);
  for (const Edge& e : edges) g.insert_edge(e.u, e.v);
  return g;
}

Graph Graph::from_edges(int num_vertices, std::span<const std::pair<VertexId, VertexId>> edges) {
  Graph g(num_vertices);
  for (const auto& [u, v] : edges) g.insert_edge(u, v);
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<int> Graph::bfs(VertexId source) const {
  std::vector<int> dist(adjacency_.size(), -1);
  std::queue<VertexId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop();
    for (VertexId w : adjacency_[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

bool Graph::connected() const {
  if (adjacency_.empty()) return true;
  auto dist = bfs(0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

Graph Graph::induced(std::span<const VertexId> keep) const {
  std::vector<int> index(adjacency_.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  Graph g(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (VertexId w : adjacency_[keep[i]]) {
      int j = index[w];
      if (j > static_cast<int>(i)) g.insert_edge(static_cast<int>(i), j);
    }
  }
  return g;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.num_vertices()) {
  data_.resize(static_cast<std::size_t>(n_) * n_);
  for (VertexId u = 0; u < n_; ++u) {
    auto row = g.bfs(u);
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(u) * n_);
  }
}

}  // namespace cubik
