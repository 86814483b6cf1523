// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubik/collapse.hpp"
#include "cubik/coloring.hpp"
#include "cubik/generators.hpp"
#include "cubik/hyperconvex.hpp"
#include "cubik/hyperplanes.hpp"
#include "cubik/median.hpp"
#include "cubik/metric.hpp"
#include "cubik/taut.hpp"
#include "support.hpp"

using namespace cubik;
using cubik::testing::isomorphic;
using cubik::testing::random_point;
using cubik::testing::vertex_point;

namespace {

constexpr double kInf = kInfNorm;

// pinned tolerances
constexpr double kOracleSlack = 1e-6;      // criterion 5, on top of 2/k
constexpr double kExactDistanceTol = 1e-9;  // criterion 5 exact checks
constexpr double kLengthTol = 1e-9;         // criterion 7
constexpr double kBlockTol = 1e-9;          // criterion 7
constexpr double kWitnessTol = 1e-7;        // criterion 8 witness re-check
constexpr double kBoundaryBand = 1e-6;      // criterion 9
constexpr double kContainsTol = 1e-9;       // criterion 9 membership

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Report {
  int failed = 0;
  void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d: %s - %s (%s; %.2f s of %.0f s)%s\n", id, pass ? "PASS" : "FAIL", title,
                o.detail.c_str(), s, limit_s, in_time ? "" : " [time limit exceeded]");
    std::fflush(stdout);
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int diameter(const Graph& g) {
  const DistanceMatrix d(g);
  int out = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u)
    for (VertexId v = 0; v < g.num_vertices(); ++v) out = std::max(out, d(u, v));
  return out;
}

bool median_and_cat0(const CubeComplex& c) { return is_median(c.graph()).median && is_cat0(c).cat0; }

Outcome criterion1() {
  int checked = 0, bad = 0;
  auto expect = [&](bool ok) {
    ++checked;
    if (!ok) ++bad;
  };
  expect(!is_median(k23_graph()).median);
  for (int s = 0; s < 10; ++s) expect(median_and_cat0(tree_complex(5 + 3 * s, s)));
  for (int n = 1; n <= 6; ++n) expect(median_and_cat0(hypercube(n)));
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) expect(median_and_cat0(grid(a, b)));
  for (int k = 1; k <= 3; ++k) expect(median_and_cat0(simplex_graph(mycielski_iterate(k))));
  for (int s = 0; s < 40; ++s) {
    const int n = 4 + s % 9;  // 4..12 vertices
    expect(median_and_cat0(simplex_graph(random_triangle_free(s, n, n + s % 7))));
  }
  const CubeComplex t = tricorner();
  expect(!is_median(t.graph()).median);
  expect(!link_condition_check(t).ok);
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " verdicts as expected"};
}

struct Sample {
  int steps;
  RandomCollapsible r;
};

std::vector<Sample> collapsible_samples() {
  std::vector<Sample> out;
  for (int seed = 0; seed < 100; ++seed) {
    const int steps = 1 + seed % 10;
    out.push_back({steps, random_collapsible(static_cast<std::uint64_t>(seed), steps, 2 + seed % 7, 200)});
  }
  return out;
}

Outcome criterion2(const std::vector<Sample>& samples) {
  int ok = 0;
  std::size_t max_v = 0;
  for (const Sample& s : samples) {
    const CubeComplex& c = s.r.complex;
    max_v = std::max<std::size_t>(max_v, c.num_vertices());
    const Decomposition d = collapse_all(c);
    const ExpandedComplex e = expand_all(d);
    const bool same = relabel_vertices(e.complex, e.original) == c;
    if (same && verify_decomposition(c, d).valid) ++ok;
  }
  return {ok == static_cast<int>(samples.size()),
          std::to_string(ok) + "/" + std::to_string(samples.size()) + " round trips, up to " +
              std::to_string(max_v) + " vertices"};
}

Outcome criterion3(const std::vector<Sample>& samples) {
  int ok = 0;
  for (const Sample& s : samples) {
    const CubeComplex& c = s.r.complex;
    if (!is_cat0(c).cat0) continue;
    const HyperplaneStructure hs(c);
    if (width(hs) > 2 * s.steps) continue;
    const Coloring col = coloring_from_decomposition(c, hs, s.r.decomposition);
    if (!is_valid_coloring(hs.crossing(), col) || col.num_colors > s.steps) continue;
    ++ok;
  }
  return {ok == static_cast<int>(samples.size()),
          std::to_string(ok) + "/" + std::to_string(samples.size()) + " complexes CAT(0), width <= 2*steps, colorable"};
}

Outcome criterion4() {
  bool pass = true;
  std::string detail;
  for (int n = 1; n <= 3; ++n) {
    const Graph g = mycielski_iterate(n);
    const CubeComplex c = simplex_graph(g);
    const Graph crossing = HyperplaneStructure(c).crossing();
    const bool iso = isomorphic(crossing, g);
    const int chi = chromatic_exact(crossing).num_colors;
    const int chi_brute = chromatic_bruteforce(g);
    const int diam = diameter(c.graph());
    const bool ok = iso && chi == n + 1 && chi_brute == n + 1 && c.dimension() == 2 && diam <= 4;
    pass = pass && ok;
    detail += (n > 1 ? "; " : "") + std::string("M") + std::to_string(n) + ": iso=" + (iso ? "yes" : "no") +
              " chi=" + std::to_string(chi) + " dim=" + std::to_string(c.dimension()) +
              " diam=" + std::to_string(diam);
  }
  return {pass, detail};
}

CubeComplex collapsible_with_vertices(int target) {
  // deterministic scan for a generated complex with exactly `target` vertices
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomCollapsible r = random_collapsible(seed, 16, 3, target);
    if (r.complex.num_vertices() == target) return r.complex;
  }
  throw std::runtime_error("no generated complex with " + std::to_string(target) + " vertices");
}

Outcome criterion5() {
  const int k = 32;
  const std::vector<std::pair<std::string, CubeComplex>> corpus{
      {"square", hypercube(2)}, {"strip", grid(2, 1)}, {"q3", hypercube(3)},
      {"tricorner", tricorner()}, {"lshape", lshape()}, {"random50", collapsible_with_vertices(50)}};
  int pairs = 0, bad = 0;
  double worst = 0.0;
  for (const auto& [name, c] : corpus) {
    for (double p : {1.0, 2.0, kInf}) {
      const GeodesicSolver solver(c, p);
      const GridOracle oracle(c, p, k);
      Rng rng(1000 + c.num_vertices());
      for (int i = 0; i < 20; ++i) {
        const PointLocation a = random_point(c, rng), b = random_point(c, rng);
        const double gap = std::abs(solver.distance(a, b).length - oracle.distance(a, b));
        worst = std::max(worst, gap);
        ++pairs;
        if (gap > 2.0 / k + kOracleSlack) {
          ++bad;
          std::fprintf(stderr, "criterion 5: %s p=%g gap %.6f\n", name.c_str(), p, gap);
        }
      }
    }
  }
  const CubeComplex sq = hypercube(2), strip = grid(2, 1);
  const double d_sq = distance(sq, vertex_point(sq, 0), vertex_point(sq, 3), kInf).length;
  const double d_strip = distance(strip, vertex_point(strip, 0), vertex_point(strip, 5), 2.0).length;
  const bool exact = std::abs(d_sq - 1.0) <= kExactDistanceTol && std::abs(d_strip - std::sqrt(5.0)) <= kExactDistanceTol;
  return {bad == 0 && exact, std::to_string(pairs - bad) + "/" + std::to_string(pairs) +
                                 " pairs within 2/32+1e-6, worst gap " + fmt("%.6f", worst) +
                                 fmt("; square d_inf %.9f, strip d_2 %.9f", d_sq, d_strip)};
}

Outcome criterion6() {
  const std::vector<CubeComplex> corpus{hypercube(6), grid(7, 7), tree_complex(80, 3), lshape(),
                                        simplex_graph(mycielski_iterate(3)), collapsible_with_vertices(50),
                                        random_collapsible(11, 20, 6, 200).complex};
  long long pairs = 0, bad = 0;
  for (const CubeComplex& c : corpus) {
    const HyperplaneStructure hs(c);
    const DistanceMatrix dm(c.graph());
    const GeodesicSolver solver(c, 1.0);
    for (VertexId u = 0; u < c.num_vertices(); ++u) {
      for (VertexId v = u; v < c.num_vertices(); ++v) {
        const int sep = static_cast<int>(separating_hyperplanes(hs, u, v).size());
        const double l1 = solver.distance(vertex_point(c, u), vertex_point(c, v)).length;
        ++pairs;
        if (sep != dm(u, v) || l1 != static_cast<double>(dm(u, v))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " vertex pairs agree exactly"};
}

Outcome criterion7() {
  const std::vector<CubeComplex> corpus{hypercube(2), grid(2, 1),     hypercube(3),       lshape(),
                                        grid(4, 3),   path_complex(6), tree_complex(15, 9), collapsible_with_vertices(40)};
  const double ps[] = {1.0, 2.0, kInf};
  int strings = 0, bad_len = 0, bad_taut = 0, windows = 0, bad_block = 0;
  double min_block = kInf;
  Rng rng(77);
  while (strings < 500) {
    const CubeComplex& c = corpus[strings % corpus.size()];
    const double p = ps[(strings / corpus.size()) % 3];
    const GeodesicSolver solver(c, p);
    const PointLocation a = random_point(c, rng), b = random_point(c, rng);
    const DistanceResult r = solver.distance(a, b);
    const MString t = tauten(c, r.string, p);
    ++strings;
    if (std::abs(string_length(c, t, p) - r.length) > kLengthTol) ++bad_len;
    if (!is_taut(c, t, p, kLengthTol).taut) ++bad_taut;
    const int segs = c.dimension() + 2;  // an (n+2)-string: n+3 points
    if (static_cast<int>(t.points.size()) > segs) {
      ++windows;
      const BlockBound bb = check_block_bound(c, t, p, segs, kBlockTol);
      min_block = std::min(min_block, bb.min_length);
      if (!bb.ok) ++bad_block;
    }
  }
  return {bad_len == 0 && bad_taut == 0 && bad_block == 0,
          std::to_string(strings) + " strings: length mismatches " + std::to_string(bad_len) + ", not taut " +
              std::to_string(bad_taut) + ", block-bound failures " + std::to_string(bad_block) + " of " +
              std::to_string(windows) + " long strings" +
              (windows > 0 ? fmt(" (shortest block %.6f)", min_block) : std::string())};
}

Outcome criterion8() {
  const CubeComplex t = tricorner();
  const double eps = 0.5;
  const std::vector<PointLocation> centers{canonical_point(t, {0, {eps / 8, 0.0}}),
                                           canonical_point(t, {2, {3 * eps / 8, eps / 8}}),
                                           canonical_point(t, {2, {eps / 8, 3 * eps / 8}})};
  const std::vector<double> radii{eps / 4, eps / 8, eps / 8};
  const ProbeVerdict v = hyperconvexity_probe(t, centers, radii, 128);
  const bool counterexample = v.kind == ProbeVerdict::Kind::kNoCommonPointAtResolution && v.resolution == 128;

  int found = 0;
  const int families = 50;
  for (int f = 0; f < families; ++f) {
    const CubeComplex c = random_collapsible(100 + f, 8, 3, 40).complex;
    const BallCalculator calc(c, collapse_all(c));
    const GeodesicSolver solver(c, kInf);
    Rng rng(500 + f);
    std::vector<PointLocation> x;
    std::vector<double> u;
    for (int i = 0; i < 3; ++i) {
      x.push_back(random_point(c, rng));
      u.push_back(0.1 + rng.unit());
    }
    // smallest common scaling of random weights making the family admissible
    double lambda = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) lambda = std::max(lambda, solver.distance(x[i], x[j]).length / (u[i] + u[j]));
    std::vector<GeneralizedCuboid> balls;
    for (int i = 0; i < 3; ++i) balls.push_back(calc.ball(point_cuboid(c, x[i]), lambda * u[i] + 1e-9));
    const PropertyPVerdict pv = property_P_check(c, balls);
    if (pv.kind != PropertyPVerdict::Kind::kCommonPoint || !pv.witness) continue;
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && solver.distance(x[i], *pv.witness).length <= lambda * u[i] + kWitnessTol;
    if (ok) ++found;
  }
  return {counterexample && found == families,
          std::string("tricorner probe: ") + (counterexample ? "no common point at k=128" : "UNEXPECTED verdict") +
              fmt(" (best excess %.6f)", v.best_excess) + "; collapsible families with a common point: " +
              std::to_string(found) + "/" + std::to_string(families)};
}

Outcome criterion9() {
  struct Case {
    CubeComplex c;
    bool from_vertex;
    double r;
  };
  const std::vector<Case> cases{{path_complex(1), false, 0.3},
                                {hypercube(2), true, 0.5},
                                {grid(2, 1), true, 1.5},
                                {hypercube(3), false, 0.7},
                                {lshape(), false, 0.9},
                                {grid(3, 3), false, 1.2},
                                {tree_complex(10, 6), false, 1.7},
                                {path_complex(5), false, 2.2},
                                {random_collapsible(3, 8, 3, 40).complex, false, 1.1},
                                {random_collapsible(4, 10, 3, 60).complex, false, 0.8}};
  const int samples = 10000;
  long long agree = 0, banded = 0, disagree = 0;
  int invalid = 0;
  int case_id = 0;
  for (const Case& k : cases) {
    const CubeComplex& c = k.c;
    const BallCalculator calc(c, collapse_all(c));
    const GeodesicSolver solver(c, kInf);
    Rng rng(9000 + case_id);
    // X: a vertex, or a small ball around a random point (itself a generalized cuboid)
    const GeneralizedCuboid x = k.from_vertex ? point_cuboid(c, vertex_point(c, 0))
                                              : calc.ball(point_cuboid(c, random_point(c, rng)), 0.25 * rng.unit());
    const GeneralizedCuboid b = calc.ball(x, k.r);
    if (!gcuboid_validate(c, x).valid || !gcuboid_validate(c, b).valid) ++invalid;
    const EndSet xe = cuboid_end(c, x);
    for (int i = 0; i < samples; ++i) {
      const PointLocation p = random_point(c, rng);
      const double d = solver.distance(point_end(c, p), xe).length;
      if (std::abs(d - k.r) <= kBoundaryBand) {
        ++banded;
        continue;
      }
      if (gcuboid_contains(c, b, p, kContainsTol) == (d <= k.r)) {
        ++agree;
      } else {
        ++disagree;
        if (disagree <= 5) std::fprintf(stderr, "criterion 9: case %d disagrees at d=%.9f r=%.3f\n", case_id, d, k.r);
      }
    }
    ++case_id;
  }
  return {disagree == 0 && invalid == 0,
          std::to_string(agree) + " agree, " + std::to_string(disagree) + " disagree, " + std::to_string(banded) +
              " in the boundary band over " + std::to_string(cases.size()) + " cases; invalid balls " +
              std::to_string(invalid)};
}

}  // namespace

int main() {
  Report report;
  report.run(1, "median/CAT(0) recognition", 10, criterion1);
  const std::vector<Sample> samples = collapsible_samples();
  report.run(2, "collapse round trip", 60, [&] { return criterion2(samples); });
  report.run(3, "collapsible complexes: CAT(0), width, coloring", 60, [&] { return criterion3(samples); });
  report.run(4, "Mycielski / simplex-graph chain", 120, criterion4);
  report.run(5, "geodesic solver vs grid oracle", 300, criterion5);
  report.run(6, "vertex l1 distance = graph distance = separating hyperplanes", 60, criterion6);
  report.run(7, "taut strings", 60, criterion7);
  report.run(8, "hyperconvexity dichotomy", 300, criterion8);
  report.run(9, "ball calculus", 120, criterion9);
  std::printf("%d of 9 criteria failed\n", report.failed);
  return report.failed == 0 ? 0 : 1;
}
