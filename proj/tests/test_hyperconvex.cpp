#include <doctest.h>

#include <cmath>

#include "cubik/collapse.hpp"
#include "cubik/generators.hpp"
#include "cubik/hyperconvex.hpp"
#include "cubik/metric.hpp"
#include "support.hpp"

using namespace cubik;
using cubik::testing::error_of;
using cubik::testing::random_point;
using cubik::testing::vertex_point;

namespace {

constexpr double kInf = kInfNorm;

void check_box(const GeneralizedCuboid& x, CubeId k, const Box& want) {
  CAPTURE(k);
  REQUIRE(x.boxes.count(k) == 1);
  const Box& got = x.boxes.at(k);
  REQUIRE(got.size() == want.size());
  for (std::size_t l = 0; l < want.size(); ++l) {
    CHECK(got[l].first == doctest::Approx(want[l].first).epsilon(1e-9));
    CHECK(got[l].second == doctest::Approx(want[l].second).epsilon(1e-9));
  }
}

GeneralizedCuboid one_box(CubeId k, Box b) {
  GeneralizedCuboid x;
  x.boxes.emplace(k, std::move(b));
  return x;
}

Box random_box(Rng& rng, int dim) {
  Box b(dim);
  for (auto& [lo, hi] : b) {
    lo = rng.unit();
    hi = rng.unit();
    if (lo > hi) std::swap(lo, hi);
  }
  return b;
}

double distance_to(const GeodesicSolver& s, const GeneralizedCuboid& x, const PointLocation& p) {
  return s.distance(point_end(s.complex(), p), cuboid_end(s.complex(), x)).length;
}

}  // namespace

TEST_SUITE("hyperconvex") {
  TEST_CASE("validation") {
    const CubeComplex sq = hypercube(2);
    CHECK(gcuboid_validate(sq, one_box(0, {{0.2, 0.4}, {0.1, 0.9}})).valid);
    CHECK(gcuboid_validate(sq, one_box(0, {{0.0, 0.0}, {0.0, 0.0}})).valid);
    CHECK_FALSE(gcuboid_validate(sq, one_box(0, {{0.4, 0.2}, {0.1, 0.9}})).valid);
    CHECK_FALSE(gcuboid_validate(sq, one_box(0, {{0.0, 1.2}, {0.1, 0.9}})).valid);
    CHECK_FALSE(gcuboid_validate(sq, one_box(0, {{0.0, 1.0}})).valid);
    CHECK_FALSE(gcuboid_validate(sq, one_box(7, {{0.0, 1.0}, {0.0, 1.0}})).valid);

    const CubeComplex strip = grid(2, 1);
    GeneralizedCuboid joined;
    joined.boxes = {{0, {{0.5, 1.0}, {0.0, 1.0}}}, {1, {{0.0, 0.5}, {0.0, 1.0}}}};
    CHECK(gcuboid_validate(strip, joined).valid);
    GeneralizedCuboid apart;
    apart.boxes = {{0, {{0.0, 0.2}, {0.0, 1.0}}}, {1, {{0.8, 1.0}, {0.0, 1.0}}}};
    CHECK_FALSE(gcuboid_validate(strip, apart).valid);
    GeneralizedCuboid mismatch;
    mismatch.boxes = {{0, {{0.5, 1.0}, {0.0, 0.2}}}, {1, {{0.0, 0.5}, {0.5, 1.0}}}};
    CHECK_FALSE(gcuboid_validate(strip, mismatch).valid);
  }

  TEST_CASE("intersection") {
    const CubeComplex sq = hypercube(2);
    const std::vector<GeneralizedCuboid> three{one_box(0, {{0.0, 0.6}, {0.0, 0.6}}),
                                               one_box(0, {{0.4, 1.0}, {0.0, 0.6}}),
                                               one_box(0, {{0.0, 1.0}, {0.5, 1.0}})};
    const auto meet = gcuboid_intersect(sq, three);
    REQUIRE(meet.has_value());
    check_box(*meet, 0, {{0.4, 0.6}, {0.5, 0.6}});

    const GeneralizedCuboid x = one_box(0, {{0.1, 0.3}, {0.1, 0.3}});
    const std::vector<GeneralizedCuboid> apart{x, one_box(0, {{0.6, 0.8}, {0.1, 0.3}})};
    CHECK_FALSE(gcuboid_intersect(sq, apart).has_value());

    const CubeComplex strip = grid(2, 1);
    const GeneralizedCuboid y = one_box(1, {{0.2, 0.7}, {0.0, 0.4}});
    const std::vector<GeneralizedCuboid> with_whole{whole_cuboid(strip), y};
    CHECK(gcuboid_intersect(strip, with_whole) == y);
  }

  TEST_CASE("interval Helly inside one cube") {
    const CubeComplex q = hypercube(3);
    Rng rng(2);
    int families = 0;
    for (int trial = 0; trial < 3000; ++trial) {
      std::vector<GeneralizedCuboid> xs;
      const int m = 2 + rng.below(4);
      for (int i = 0; i < m; ++i) xs.push_back(one_box(0, random_box(rng, 3)));
      bool pairwise = true;
      for (int i = 0; i < m && pairwise; ++i)
        for (int j = i + 1; j < m && pairwise; ++j) {
          const std::vector<GeneralizedCuboid> two{xs[i], xs[j]};
          pairwise = gcuboid_intersect(q, two).has_value();
        }
      if (!pairwise) continue;
      ++families;
      CHECK(gcuboid_intersect(q, xs).has_value());
      CHECK(property_P_check(q, xs).kind == PropertyPVerdict::Kind::kCommonPoint);
    }
    CHECK(families > 50);
  }

  TEST_CASE("ball examples") {
    const CubeComplex seg = path_complex(1);
    const GeneralizedCuboid b1 = ball_of_gcuboid(seg, collapse_all(seg), point_cuboid(seg, {0, {0.5}}), 0.3);
    check_box(b1, 0, {{0.2, 0.8}});

    const CubeComplex sq = hypercube(2);
    const GeneralizedCuboid b2 = ball_of_gcuboid(sq, collapse_all(sq), point_cuboid(sq, vertex_point(sq, 0)), 0.5);
    check_box(b2, 0, {{0.0, 0.5}, {0.0, 0.5}});

    const CubeComplex strip = grid(2, 1);
    const GeneralizedCuboid b3 =
        ball_of_gcuboid(strip, collapse_all(strip), point_cuboid(strip, vertex_point(strip, 0)), 1.5);
    check_box(b3, 0, {{0.0, 1.0}, {0.0, 1.0}});
    check_box(b3, 1, {{0.0, 0.5}, {0.0, 1.0}});
    CHECK(gcuboid_validate(strip, b3).valid);
  }

  TEST_CASE("ball errors") {
    const CubeComplex sq = hypercube(2);
    const BallCalculator calc(sq, collapse_all(sq));
    CHECK(error_of([&] { calc.ball(point_cuboid(sq, vertex_point(sq, 0)), -0.1); }) == ErrorCode::kBadParams);
    CHECK(error_of([&] { calc.ball(GeneralizedCuboid{}, 0.1); }) == ErrorCode::kBadParams);
    const CubeComplex strip = grid(2, 1);
    CHECK(error_of([&] { BallCalculator(strip, collapse_all(sq)); }) == ErrorCode::kNotCollapsible);
  }

  TEST_CASE("balls validate and match the metric") {
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      CAPTURE(name);
      const BallCalculator calc(c, collapse_all(c));
      const GeodesicSolver solver(c, kInf);
      Rng rng(19);
      for (int t = 0; t < 4; ++t) {
        // X is itself a ball, hence a generalized cuboid
        const GeneralizedCuboid x = calc.ball(point_cuboid(c, random_point(c, rng)), 0.4 * rng.unit());
        REQUIRE(gcuboid_validate(c, x).valid);
        const double r = 2.0 * rng.unit();
        const GeneralizedCuboid b = calc.ball(x, r);
        const CuboidVerdict v = gcuboid_validate(c, b);
        CAPTURE(v.reason);
        CHECK(v.valid);
        for (int i = 0; i < 40; ++i) {
          const PointLocation p = random_point(c, rng);
          const double d = distance_to(solver, x, p);
          if (std::abs(d - r) < 1e-6) continue;
          CHECK(gcuboid_contains(c, b, p, 1e-9) == (d <= r));
        }
      }
    }
  }

  TEST_CASE("property P") {
    const CubeComplex sq = hypercube(2);
    const std::vector<GeneralizedCuboid> three{one_box(0, {{0.0, 0.6}, {0.0, 0.6}}),
                                               one_box(0, {{0.4, 1.0}, {0.0, 0.6}}),
                                               one_box(0, {{0.0, 1.0}, {0.5, 1.0}})};
    const PropertyPVerdict ok = property_P_check(sq, three);
    REQUIRE(ok.kind == PropertyPVerdict::Kind::kCommonPoint);
    REQUIRE(ok.witness.has_value());
    for (const GeneralizedCuboid& x : three) CHECK(gcuboid_contains(sq, x, *ok.witness, 1e-12));

    const std::vector<GeneralizedCuboid> apart{three[0], three[1], one_box(0, {{0.8, 1.0}, {0.8, 1.0}})};
    const PropertyPVerdict bad = property_P_check(sq, apart);
    CHECK(bad.kind == PropertyPVerdict::Kind::kPrecondFailed);
    REQUIRE(bad.disjoint_pair.has_value());
    CHECK(*bad.disjoint_pair == std::pair<int, int>{0, 2});
  }

  TEST_CASE("admissible ball triples on collapsible complexes meet") {
    for (const auto& [name, c] : cubik::testing::small_cat0_corpus()) {
      CAPTURE(name);
      const BallCalculator calc(c, collapse_all(c));
      const GeodesicSolver solver(c, kInf);
      Rng rng(29);
      for (int t = 0; t < 5; ++t) {
        std::vector<PointLocation> x;
        for (int i = 0; i < 3; ++i) x.push_back(random_point(c, rng));
        // radii r_i = max_j d(x_i, x_j) / 2 are admissible
        std::vector<double> r(3, 0.0);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j) r[i] = std::max(r[i], solver.distance(x[i], x[j]).length / 2.0 + 1e-9);
        std::vector<GeneralizedCuboid> balls;
        for (int i = 0; i < 3; ++i) balls.push_back(calc.ball(point_cuboid(c, x[i]), r[i]));
        const PropertyPVerdict v = property_P_check(c, balls);
        REQUIRE(v.kind == PropertyPVerdict::Kind::kCommonPoint);
        for (int i = 0; i < 3; ++i) CHECK(solver.distance(x[i], *v.witness).length <= r[i] + 1e-7);
      }
    }
  }

  TEST_CASE("probe on the tricorner construction") {
    const CubeComplex t = tricorner();
    const double eps = 0.5;
    const std::vector<PointLocation> centers{canonical_point(t, {0, {eps / 8, 0.0}}),
                                             canonical_point(t, {2, {3 * eps / 8, eps / 8}}),
                                             canonical_point(t, {2, {eps / 8, 3 * eps / 8}})};
    const std::vector<double> radii{eps / 4, eps / 8, eps / 8};
    const GeodesicSolver solver(t, kInf);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        CHECK(solver.distance(centers[i], centers[j]).length <= radii[i] + radii[j] + 1e-9);
    const ProbeVerdict v = hyperconvexity_probe(t, centers, radii, 128);
    CHECK(v.kind == ProbeVerdict::Kind::kNoCommonPointAtResolution);
    CHECK(v.resolution == 128);
    CHECK(v.best_excess > 0.0);
    CHECK(v.method == "grid");
  }

  TEST_CASE("probe on collapsible complexes") {
    const CubeComplex g = grid(3, 3);
    const Decomposition d = collapse_all(g);
    const GeodesicSolver solver(g, kInf);
    Rng rng(37);
    for (int t = 0; t < 10; ++t) {
      const std::vector<PointLocation> centers{random_point(g, rng), random_point(g, rng)};
      const double dist = solver.distance(centers[0], centers[1]).length;
      const double share = rng.unit();
      const std::vector<double> radii{share * dist + 1e-9, (1 - share) * dist + 1e-9};
      for (const Decomposition* dp : {&d, static_cast<const Decomposition*>(nullptr)}) {
        const ProbeVerdict v = hyperconvexity_probe(g, centers, radii, 16, dp);
        REQUIRE(v.kind == ProbeVerdict::Kind::kCommonPointFound);
        for (int i = 0; i < 2; ++i) CHECK(solver.distance(centers[i], *v.point).length <= radii[i] + 1e-6);
      }
    }

    const std::vector<PointLocation> one{PointLocation{4, {0.25, 0.75}}};
    const std::vector<double> zero{0.0};
    const ProbeVerdict single = hyperconvexity_probe(g, one, zero, 8, &d);
    REQUIRE(single.kind == ProbeVerdict::Kind::kCommonPointFound);
    CHECK(solver.distance(one[0], *single.point).length <= 1e-9);

    const std::vector<PointLocation> far{vertex_point(g, 0), vertex_point(g, 15)};
    const std::vector<double> small{0.5, 0.5};
    const ProbeVerdict bad = hyperconvexity_probe(g, far, small, 8, &d);
    CHECK(bad.kind == ProbeVerdict::Kind::kNotAdmissible);
    CHECK(bad.bad_pair == std::optional<std::pair<int, int>>{{0, 1}});
  }
}
