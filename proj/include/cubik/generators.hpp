#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubik/collapse.hpp"
#include "cubik/complex.hpp"
#include "cubik/graph.hpp"

namespace cubik {

/// The generator behind every randomized routine: std::mt19937_64 seeded with
/// the user seed; a draw in [0, n) is next() % n.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  /// Uniform double in [0,1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Vertices 0..n, edges i–(i+1).
CubeComplex path_complex(int n);
/// n edges: vertex i > 0 hangs off a uniform earlier vertex.
CubeComplex tree_complex(int n, std::uint64_t seed);
/// Q_n; vertex ids are the binary words.
CubeComplex hypercube(int n);
/// a × b unit squares; vertex (x, y) has id x + (a+1)·y.
CubeComplex grid(int a, int b);
/// Q_3 without vertex 7: the squares {0,1,2,3}, {0,1,4,5}, {0,2,4,6}.
CubeComplex tricorner();
/// 4-cycle 0–1–3–2 without its square.
CubeComplex hollow_square();
/// grid(2,2) without the corner (2,2): three squares.
CubeComplex lshape();

/// K_{2,3}: hubs 0, 1; degree-2 vertices 2, 3, 4.
Graph k23_graph();

/// Complex from the generator names used by the CLI: path, tree, hypercube,
/// grid, k23 (its graph as a 1-dimensional complex), tricorner,
/// hollow_square, lshape. Throws kBadParams.
CubeComplex standard(const std::string& kind, int n, int a, int b, std::uint64_t seed);

/// Vertices V, then copies V' = n..2n-1, then the apex 2n.
Graph mycielski(const Graph& g);
/// M_1 = K_2, M_{k+1} = mycielski(M_k); chromatic number k+1.
Graph mycielski_iterate(int k);

/// Cliques of g (the empty clique included) ordered by size, then
/// lexicographically; vertex i of the simplex complex is cliques[i].
std::vector<std::vector<VertexId>> cliques(const Graph& g);
CubeComplex simplex_graph(const Graph& g);

struct RandomCollapsible {
  CubeComplex complex;
  Decomposition decomposition;
};

/// Grows a complex from vertex 0 by `steps` expansions along random pairwise
/// disjoint cube faces (at most `max_cuboids` per step), never exceeding
/// `max_vertices`. Vertex ids are the creation order.
RandomCollapsible random_collapsible(std::uint64_t seed, int steps, int max_cuboids, int max_vertices = 200);

/// Random triangle-free graph: edges offered in random order, kept when they
/// close no triangle, until `edges` are kept or offers run out.
Graph random_triangle_free(std::uint64_t seed, int n, int edges);

}  // namespace cubik
