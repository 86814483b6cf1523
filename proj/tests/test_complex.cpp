#include <doctest.h>

#include <algorithm>
#include <set>

#include "cubik/complex.hpp"
#include "cubik/error.hpp"
#include "cubik/generators.hpp"
#include "support.hpp"

using namespace cubik;
using cubik::testing::random_boundary_point;
using cubik::testing::small_cat0_corpus;

namespace {

int count_dim(const CubeComplex& c, int d) {
  return static_cast<int>(std::count_if(c.cubes().begin(), c.cubes().end(), [&](const Cube& q) { return q.dim == d; }));
}

ErrorCode build_error(int n, std::vector<std::vector<VertexId>> cubes) {
  try {
    CubeComplex::build(n, cubes);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kBadInput;
}

// Induced 4-cycles by brute force over vertex quadruples.
int induced_squares(const Graph& g) {
  int count = 0;
  const int n = g.num_vertices();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int v[4] = {a, b, c, d};
          int edges = 0, deg[4] = {0, 0, 0, 0};
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (g.adjacent(v[i], v[j])) ++edges, ++deg[i], ++deg[j];
          if (edges == 4 && std::all_of(deg, deg + 4, [](int x) { return x == 2; })) ++count;
        }
  return count;
}

}  // namespace

TEST_SUITE("complex") {
  TEST_CASE("a single square") {
    const CubeComplex c = CubeComplex::build(4, std::vector<std::vector<VertexId>>{{0, 1, 2, 3}});
    CHECK(count_dim(c, 2) == 1);
    CHECK(count_dim(c, 1) == 4);
    CHECK(count_dim(c, 0) == 4);
    CHECK(c.dimension() == 2);
    CHECK(c.graph().num_edges() == 4);
  }

  TEST_CASE("tricorner has three squares and nine edges") {
    const CubeComplex c = tricorner();
    CHECK(count_dim(c, 2) == 3);
    CHECK(c.graph().num_edges() == 9);
    CHECK(induced_squares(c.graph()) == 3);
  }

  TEST_CASE("construction errors") {
    CHECK(build_error(4, {{0, 1, 2, 3}, {0, 1, 3, 2}}) == ErrorCode::kBadGluing);
    CHECK(build_error(3, {{0, 1, 2}}) == ErrorCode::kNotAHypercube);
    CHECK(build_error(4, {{0, 1, 1, 2}}) == ErrorCode::kNotAHypercube);
    CHECK(build_error(3, {{0, 1}}) == ErrorCode::kDanglingVertex);
  }

  TEST_CASE("single vertex is a valid complex") {
    const CubeComplex c = CubeComplex::build(1, std::vector<std::vector<VertexId>>{});
    CHECK(c.dimension() == 0);
    CHECK(c.num_cubes() == 1);
  }

  TEST_CASE("completion from graphs") {
    const std::vector<std::pair<VertexId, VertexId>> c4{{0, 1}, {1, 3}, {3, 2}, {2, 0}};
    CHECK(count_dim(completion_from_graph(Graph::from_edges(4, c4)), 2) == 1);

    const std::vector<VertexId> keep{0, 1, 2, 3, 4, 5, 6};
    const CubeComplex t = completion_from_graph(hypercube(3).graph().induced(keep));
    CHECK(t == tricorner());

    const CubeComplex tree = tree_complex(15, 9);
    const CubeComplex again = completion_from_graph(tree.graph());
    CHECK(again.dimension() == 1);
    CHECK(again == tree);
  }

  TEST_CASE("completion is idempotent") {
    for (const auto& [name, c] : small_cat0_corpus()) {
      CAPTURE(name);
      const CubeComplex once = completion_from_graph(c.graph());
      CHECK(completion_from_graph(once.graph()) == once);
    }
  }

  TEST_CASE("canonical points") {
    const CubeComplex sq = hypercube(2);
    const PointLocation edge = canonical_point(sq, {0, {0.5, 0.0}});
    CHECK(sq.cube(edge.cube).dim == 1);
    CHECK(edge.coords == std::vector<double>{0.5});
    const std::vector<VertexId> bottom{0, 1};
    CHECK(edge.cube == *sq.find_cube(bottom));
    CHECK(canonical_point(sq, {0, {0.3, 0.7}}) == PointLocation{0, {0.3, 0.7}});

    // shared edge of the strip seen from both squares
    const CubeComplex strip = grid(2, 1);
    const PointLocation a = canonical_point(strip, {0, {1.0, 0.25}});
    const PointLocation b = canonical_point(strip, {1, {0.0, 0.25}});
    CHECK(a == b);
    CHECK_THROWS_AS(canonical_point(sq, {0, {1.5, 0.0}}), Error);
  }

  TEST_CASE("canonical points are idempotent and agree across cofaces") {
    Rng rng(17);
    for (const auto& [name, c] : small_cat0_corpus()) {
      CAPTURE(name);
      for (int i = 0; i < 50; ++i) {
        const PointLocation p = random_boundary_point(c, rng);
        CHECK(canonical_point(c, p) == p);
        for (CubeId k : c.maximal_cofaces(p.cube)) {
          const PointLocation back = canonical_point(c, {k, coords_in(c, p, k)});
          CHECK(back == p);
        }
      }
    }
  }

  TEST_CASE("cube adjacency") {
    const CubeComplex strip = grid(2, 1);
    auto adj = cube_adjacency(strip);
    REQUIRE(adj[0].size() == 1);
    CHECK(adj[0][0].other == 1);
    CHECK(strip.cube(adj[0][0].shared_face).dim == 1);

    const CubeComplex g = grid(2, 2);
    const std::vector<VertexId> lower_left{0, 1, 3, 4}, upper_right{4, 5, 7, 8};
    const CubeId a = *g.find_cube(lower_left), b = *g.find_cube(upper_right);
    adj = cube_adjacency(g);
    auto it = std::find_if(adj[a].begin(), adj[a].end(), [&](const CubeAdjacency& x) { return x.other == b; });
    REQUIRE(it != adj[a].end());
    CHECK(it->shared_face == g.vertex_cube(4));

    const CubeComplex row = grid(3, 1);
    const std::vector<VertexId> first{0, 1, 4, 5}, last{2, 3, 6, 7};
    const CubeId f = *row.find_cube(first), l = *row.find_cube(last);
    adj = cube_adjacency(row);
    CHECK(std::none_of(adj[f].begin(), adj[f].end(), [&](const CubeAdjacency& x) { return x.other == l; }));
  }

  TEST_CASE("face closure and gluing") {
    for (const auto& [name, c] : small_cat0_corpus()) {
      CAPTURE(name);
      std::set<std::vector<VertexId>> stored;
      for (const Cube& q : c.cubes()) {
        std::vector<VertexId> s = q.corners;
        std::sort(s.begin(), s.end());
        stored.insert(s);
      }
      for (const Cube& q : c.cubes()) {
        // faces by bit masks: fixed-bit patterns of the corner words
        const unsigned full = (1u << q.dim) - 1;
        for (unsigned free = 0; free <= full; ++free) {
          for (unsigned ones = 0; ones <= full; ++ones) {
            if (ones & free) continue;
            std::vector<VertexId> f;
            for (unsigned i = 0; i < q.corners.size(); ++i)
              if ((i & ~free) == ones) f.push_back(q.corners[i]);
            std::sort(f.begin(), f.end());
            CHECK(stored.count(f) == 1);
          }
        }
      }
      for (std::size_t i = 0; i < c.num_cubes(); ++i) {
        for (std::size_t j = i + 1; j < c.num_cubes(); ++j) {
          std::vector<VertexId> a = c.cube(i).corners, b = c.cube(j).corners, m;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
          if (!m.empty()) CHECK(stored.count(m) == 1);
        }
      }
    }
  }
}
