#include <doctest.h>

#include <cmath>

#include "cubik/collapse.hpp"
#include "cubik/generators.hpp"
#include "cubik/hyperplanes.hpp"
#include "cubik/metric.hpp"
#include "support.hpp"

using namespace cubik;
using cubik::testing::error_of;
using cubik::testing::random_point;
using cubik::testing::vertex_point;

namespace {

constexpr double kInf = kInfNorm;

// Strip = grid(2,1): cube 0 has corners [0,1,3,4], cube 1 has [1,2,4,5].
PointLocation strip_point(const CubeComplex& strip, double x, double y) {
  if (x <= 1.0) return canonical_point(strip, {0, {x, y}});
  return canonical_point(strip, {1, {x - 1.0, y}});
}

// Point (y, t) of base × [0,1], where the product was built by one
// expansion with a single cuboid holding every base vertex.
PointLocation lift(const CubeComplex& base, const Expansion& e, const PointLocation& y, double t) {
  const Cube& q = base.cube(y.cube);
  std::vector<VertexId> corners = q.corners;
  for (VertexId v : q.corners) corners.push_back(e.fresh[0][v]);
  const CubeId prism = *e.complex.find_cube(corners);
  const CubeId bottom = *e.complex.find_cube(q.corners);
  const FaceEmbedding emb = e.complex.embedding(bottom, prism);
  std::vector<double> x = emb.to_cube(y.coords);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (emb.pinned[l] >= 0) x[l] = emb.pinned[l] == 0 ? t : 1.0 - t;
  }
  return canonical_point(e.complex, {prism, x});
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("string length") {
    const CubeComplex sq = hypercube(2);
    MString diag{{vertex_point(sq, 0), vertex_point(sq, 3)}, {0}};
    CHECK(string_length(sq, diag, kInf) == doctest::Approx(1.0));
    MString bent{{vertex_point(sq, 0), vertex_point(sq, 1), vertex_point(sq, 3)}, {0, 0}};
    CHECK(string_length(sq, bent, 2.0) == doctest::Approx(2.0));

    const CubeComplex strip = grid(2, 1);
    MString across{{strip_point(strip, 0, 0), strip_point(strip, 1, 0.5), strip_point(strip, 2, 1)}, {0, 1}};
    CHECK(string_length(strip, across, kInf) == doctest::Approx(2.0));
    MString looked_up{across.points, {}};
    CHECK(string_length(strip, looked_up, kInf) == doctest::Approx(2.0));

    MString broken{{vertex_point(strip, 0), vertex_point(strip, 5)}, {0}};
    CHECK(error_of([&] { string_length(strip, broken, kInf); }) == ErrorCode::kBrokenString);
  }

  TEST_CASE("distance examples") {
    const CubeComplex sq = hypercube(2);
    CHECK(distance(sq, vertex_point(sq, 0), vertex_point(sq, 3), kInf).length == doctest::Approx(1.0));
    CHECK(distance(sq, vertex_point(sq, 0), vertex_point(sq, 3), 2.0).length == doctest::Approx(std::sqrt(2.0)));
    CHECK(distance(sq, vertex_point(sq, 0), vertex_point(sq, 3), 1.0).length == doctest::Approx(2.0));

    const CubeComplex strip = grid(2, 1);
    const PointLocation a = vertex_point(strip, 0), b = vertex_point(strip, 5);
    CHECK(distance(strip, a, b, 2.0).length == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    CHECK(distance(strip, a, b, kInf).length == doctest::Approx(2.0).epsilon(1e-9));

    const DistanceResult r = distance(strip, a, b, 2.0);
    CHECK(r.string.points.front() == a);
    CHECK(r.string.points.back() == b);
    CHECK(string_length(strip, r.string, 2.0) == doctest::Approx(r.length));

    const CubeComplex t = tricorner();
    const PointLocation x{0, {0.5, 0.5}}, z{2, {0.5, 0.5}};
    const double d = distance(t, x, z, kInf).length;
    const int k = 64;
    CHECK(std::abs(d - grid_oracle_distance(t, x, z, kInf, k)) <= 2.0 / k + 1e-6);
  }

  TEST_CASE("disconnected complexes are unreachable") {
    const std::vector<std::vector<VertexId>> cubes{{0, 1}, {2, 3}};
    const CubeComplex two = CubeComplex::build(4, cubes);
    CHECK(error_of([&] { distance(two, vertex_point(two, 0), vertex_point(two, 3), kInf); }) ==
          ErrorCode::kUnreachable);
  }

  TEST_CASE("grid oracle examples") {
    const CubeComplex sq = hypercube(2);
    CHECK(grid_oracle_distance(sq, vertex_point(sq, 0), vertex_point(sq, 3), kInf, 8) == 1.0);
    const CubeComplex strip = grid(2, 1);
    const double o = grid_oracle_distance(strip, vertex_point(strip, 0), vertex_point(strip, 5), 2.0, 32);
    CHECK(std::abs(o - std::sqrt(5.0)) <= 0.07);
    CHECK(o >= std::sqrt(5.0) - 1e-9);
  }

  TEST_CASE("distance agrees with the grid oracle") {
    const int k = 16;
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      if (c.num_vertices() > 20) continue;
      for (double p : {1.0, kInf}) {
        CAPTURE(name);
        CAPTURE(p);
        const GridOracle oracle(c, p, k);
        const GeodesicSolver solver(c, p);
        Rng rng(17);
        for (int i = 0; i < 20; ++i) {
          PointLocation a = random_point(c, rng), b = random_point(c, rng);
          // lattice-aligned points so that the oracle error is only the path error
          for (double& x : a.coords) x = std::round(x * k) / k;
          for (double& x : b.coords) x = std::round(x * k) / k;
          a = canonical_point(c, a);
          b = canonical_point(c, b);
          const double d = solver.distance(a, b).length;
          const double o = oracle.distance(a, b);
          CHECK(d <= o + 1e-6);
          CHECK(o <= d + 2.0 / k + 1e-6);
        }
      }
    }
  }

  TEST_CASE("metric axioms and monotonicity in p") {
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      CAPTURE(name);
      const GeodesicSolver s1(c, 1.0), s2(c, 2.0), si(c, kInf);
      Rng rng(23);
      for (int i = 0; i < 8; ++i) {
        const PointLocation a = random_point(c, rng), b = random_point(c, rng), z = random_point(c, rng);
        const double ab = si.distance(a, b).length;
        CHECK(ab == si.distance(b, a).length);
        CHECK(ab <= si.distance(a, z).length + si.distance(z, b).length + 1e-8);
        CHECK(si.distance(a, a).length == doctest::Approx(0.0));
        const double d2 = s2.distance(a, b).length, d1 = s1.distance(a, b).length;
        CHECK(ab <= d2 + 1e-9);
        CHECK(d2 <= d1 + 1e-9);
      }
    }
  }

  TEST_CASE("vertex l1 distance is the graph distance") {
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      CAPTURE(name);
      const GeodesicSolver s(c, 1.0);
      const DistanceMatrix dm(c.graph());
      Rng rng(5);
      for (int i = 0; i < 10; ++i) {
        const VertexId u = rng.below(c.num_vertices()), v = rng.below(c.num_vertices());
        CHECK(s.distance(vertex_point(c, u), vertex_point(c, v)).length == doctest::Approx(dm(u, v)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("doubling the gallery cap does not improve distances") {
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      CAPTURE(name);
      SolverOptions wide;
      wide.cap_factor = 2.0;
      const GeodesicSolver base(c, kInf), doubled(c, kInf, wide);
      Rng rng(31);
      for (int i = 0; i < 6; ++i) {
        const PointLocation a = random_point(c, rng), b = random_point(c, rng);
        CHECK(base.distance(a, b).length <= doubled.distance(a, b).length + 1e-7);
      }
    }
  }

  TEST_CASE("d_inf on a product with an interval is the max of the factors") {
    const std::vector<CubeComplex> bases{path_complex(3), tree_complex(6, 2), hypercube(2), grid(2, 1)};
    for (const CubeComplex& b : bases) {
      std::vector<VertexId> all(b.num_vertices());
      for (VertexId v = 0; v < b.num_vertices(); ++v) all[v] = v;
      const std::vector<std::vector<VertexId>> cuboids{all};
      const Expansion e = expand_step(b, cuboids);
      const GeodesicSolver sb(b, kInf), sp(e.complex, kInf);
      Rng rng(41);
      for (int i = 0; i < 10; ++i) {
        const PointLocation y1 = random_point(b, rng), y2 = random_point(b, rng);
        const double t1 = rng.unit(), t2 = rng.unit();
        const double want = std::max(sb.distance(y1, y2).length, std::abs(t1 - t2));
        const double got = sp.distance(lift(b, e, y1, t1), lift(b, e, y2, t2)).length;
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
      }
    }
  }
}
