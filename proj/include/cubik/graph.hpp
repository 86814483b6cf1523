#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cubik {

using VertexId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;  // u < v

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on the dense vertex set 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices) : adjacency_(num_vertices) {}

  /// Loops and duplicate edges are rejected with kBadInput.
  static Graph from_edges(int num_vertices, std::span<const Edge> edges);
  static Graph from_edges(int num_vertices, std::span<const std::pair<VertexId, VertexId>> edges);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  /// Sorted ascending.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(VertexId u, VertexId v) const;
  bool contains(VertexId v) const { return v >= 0 && v < num_vertices(); }

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const;

  /// BFS hop distances from `source`; -1 marks unreachable vertices.
  std::vector<int> bfs(VertexId source) const;
  bool connected() const;

  /// Subgraph induced on `keep` (sorted), relabeled monotonically to 0..|keep|-1.
  Graph induced(std::span<const VertexId> keep) const;

  bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

 private:
  void insert_edge(VertexId u, VertexId v);

  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// All-pairs hop distances, row-major n*n; -1 for unreachable.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g);
  int operator()(VertexId u, VertexId v) const { return data_[static_cast<std::size_t>(u) * n_ + v]; }
  int size() const { return n_; }

 private:
  int n_;
  std::vector<int> data_;
};

}  // namespace cubik
