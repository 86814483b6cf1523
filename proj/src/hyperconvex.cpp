#include "cubik/hyperconvex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cubik/error.hpp"

namespace cubik {

namespace {

constexpr double kEps = 1e-12;
constexpr double kAgree = 1e-9;

// A box on every cube of the complex (faces included); nullopt = misses it.
using Full = std::vector<std::optional<Box>>;

Interval map_interval(Interval v, bool flip) { return flip ? Interval{1.0 - v.second, 1.0 - v.first} : v; }

std::optional<Box> restrict_box(const CubeComplex& c, const Box& box, CubeId cube, CubeId face) {
  if (face == cube) return box;
  const FaceEmbedding e = c.embedding(face, cube);
  for (std::size_t l = 0; l < e.pinned.size(); ++l) {
    if (e.pinned[l] < 0) continue;
    const double v = e.pinned[l];
    if (v < box[l].first - kEps || v > box[l].second + kEps) return std::nullopt;
  }
  Box out(e.axis.size());
  for (std::size_t a = 0; a < e.axis.size(); ++a) out[a] = map_interval(box[e.axis[a]], e.flip[a]);
  return out;
}

Box embed_box(const CubeComplex& c, const Box& box, CubeId face, CubeId cube) {
  if (face == cube) return box;
  const FaceEmbedding e = c.embedding(face, cube);
  Box out(e.pinned.size());
  for (std::size_t l = 0; l < e.pinned.size(); ++l) {
    if (e.pinned[l] >= 0) out[l] = {double(e.pinned[l]), double(e.pinned[l])};
  }
  for (std::size_t a = 0; a < e.axis.size(); ++a) out[e.axis[a]] = map_interval(box[a], e.flip[a]);
  return out;
}

std::optional<Box> meet_boxes(const Box& a, const Box& b) {
  Box out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    double lo = std::max(a[l].first, b[l].first), hi = std::min(a[l].second, b[l].second);
    if (lo > hi + kEps) return std::nullopt;
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    out[l] = {lo, hi};
  }
  return out;
}

bool same_box(const Box& a, const Box& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (std::abs(a[l].first - b[l].first) > kAgree || std::abs(a[l].second - b[l].second) > kAgree) return false;
  }
  return true;
}

Full to_full(const CubeComplex& c, const GeneralizedCuboid& x) {
  Full f(c.num_cubes());
  for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
    std::optional<Box> box;
    bool first = true;
    for (CubeId k : c.maximal_cofaces(q)) {
      auto it = x.boxes.find(k);
      std::optional<Box> r;
      if (it != x.boxes.end()) r = restrict_box(c, it->second, k, q);
      if (!r) {
        box.reset();
        break;
      }
      box = first ? r : meet_boxes(*box, *r);
      first = false;
      if (!box) break;
    }
    f[q] = std::move(box);
  }
  return f;
}

GeneralizedCuboid to_public(const CubeComplex& c, const Full& f) {
  GeneralizedCuboid x;
  for (CubeId k : c.maximal_cubes()) {
    if (f[k]) x.boxes.emplace(k, *f[k]);
  }
  return x;
}

bool any_box(const Full& f) {
  return std::any_of(f.begin(), f.end(), [](const auto& b) { return b.has_value(); });
}

// Boxes of the cubes maximal among the boxed ones, embedded into every
// maximal coface of the complex.
EndSet end_of_full(const CubeComplex& c, const Full& f) {
  std::vector<CubeId> boxed;
  for (CubeId q = 0; q < static_cast<CubeId>(f.size()); ++q) {
    if (f[q]) boxed.push_back(q);
  }
  EndSet out;
  for (CubeId q : boxed) {
    bool covered = false;
    for (CubeId r : boxed) {
      if (r != q && c.cube(r).dim > c.cube(q).dim && c.contains(r, q)) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    for (CubeId k : c.maximal_cofaces(q)) {
      Box b = embed_box(c, *f[q], q, k);
      BoxEnd e{k, {}, {}};
      for (auto [lo, hi] : b) {
        e.lo.push_back(lo);
        e.hi.push_back(hi);
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

CuboidVerdict gcuboid_validate(const CubeComplex& c, const GeneralizedCuboid& x) {
  if (x.empty()) return {false, "empty"};
  for (const auto& [k, box] : x.boxes) {
    if (k < 0 || k >= static_cast<CubeId>(c.num_cubes())) return {false, "unknown cube " + std::to_string(k)};
    if (!c.is_maximal(k)) return {false, "cube " + std::to_string(k) + " is not maximal"};
    if (static_cast<int>(box.size()) != c.cube(k).dim) {
      return {false, "box on cube " + std::to_string(k) + " has wrong dimension"};
    }
    for (auto [lo, hi] : box) {
      if (!(lo >= -kEps && hi <= 1.0 + kEps && lo <= hi + kEps)) {
        return {false, "box on cube " + std::to_string(k) + " is not inside [0,1]"};
      }
    }
  }
  for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
    if (c.is_maximal(q)) continue;
    std::optional<Box> seen;
    bool first = true;
    for (CubeId k : c.maximal_cofaces(q)) {
      auto it = x.boxes.find(k);
      std::optional<Box> r;
      if (it != x.boxes.end()) r = restrict_box(c, it->second, k, q);
      const bool agree = first || (r.has_value() == seen.has_value() && (!r || same_box(*r, *seen)));
      if (!agree) return {false, "boxes disagree on face " + std::to_string(q)};
      seen = std::move(r);
      first = false;
    }
  }
  // connectivity: boxed maximal cubes joined through nonempty shared traces
  std::map<CubeId, CubeId> parent;
  for (const auto& [k, box] : x.boxes) parent[k] = k;
  auto find = [&](CubeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  const auto adjacency = cube_adjacency(c);
  for (const auto& [k, box] : x.boxes) {
    for (const CubeAdjacency& a : adjacency[k]) {
      if (!x.boxes.count(a.other) || !restrict_box(c, box, k, a.shared_face)) continue;
      parent[find(k)] = find(a.other);
    }
  }
  const CubeId root = find(x.boxes.begin()->first);
  for (const auto& [k, box] : x.boxes) {
    if (find(k) != root) return {false, "not connected"};
  }
  return {};
}

std::optional<GeneralizedCuboid> gcuboid_intersect(const CubeComplex& c, std::span<const GeneralizedCuboid> xs) {
  if (xs.empty()) throw Error(ErrorCode::kBadParams, "nothing to intersect");
  GeneralizedCuboid out;
  for (const auto& [k, box] : xs[0].boxes) {
    std::optional<Box> b = box;
    for (std::size_t i = 1; i < xs.size() && b; ++i) {
      auto it = xs[i].boxes.find(k);
      b = it == xs[i].boxes.end() ? std::nullopt : meet_boxes(*b, it->second);
    }
    if (b) out.boxes.emplace(k, std::move(*b));
  }
  if (out.empty()) return std::nullopt;
  // drop boxes whose faces lost the set elsewhere, keeping faces consistent
  return to_public(c, to_full(c, out));
}

bool gcuboid_contains(const CubeComplex& c, const GeneralizedCuboid& x, const PointLocation& p0, double tol) {
  const PointLocation p = canonical_point(c, p0);
  for (CubeId k : c.maximal_cofaces(p.cube)) {
    auto it = x.boxes.find(k);
    if (it == x.boxes.end()) continue;
    const std::vector<double> y = coords_in(c, p, k);
    bool in = true;
    for (std::size_t l = 0; l < y.size() && in; ++l) {
      in = y[l] >= it->second[l].first - tol && y[l] <= it->second[l].second + tol;
    }
    if (in) return true;
  }
  return false;
}

GeneralizedCuboid point_cuboid(const CubeComplex& c, const PointLocation& p0) {
  const PointLocation p = canonical_point(c, p0);
  GeneralizedCuboid x;
  for (CubeId k : c.maximal_cofaces(p.cube)) {
    Box b;
    for (double v : coords_in(c, p, k)) b.emplace_back(v, v);
    x.boxes.emplace(k, std::move(b));
  }
  return x;
}

GeneralizedCuboid whole_cuboid(const CubeComplex& c) {
  GeneralizedCuboid x;
  for (CubeId k : c.maximal_cubes()) x.boxes.emplace(k, Box(c.cube(k).dim, Interval{0.0, 1.0}));
  return x;
}

EndSet cuboid_end(const CubeComplex&, const GeneralizedCuboid& x) {
  EndSet out;
  for (const auto& [k, box] : x.boxes) {
    BoxEnd e{k, {}, {}};
    for (auto [lo, hi] : box) {
      e.lo.push_back(lo);
      e.hi.push_back(hi);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// balls

struct BallCalculator::Impl {
  // A cube Q of a cuboid and the prism cube Q x [0,1] over it; the prism
  // coordinate t is 0 on Q.
  struct PrismCube {
    CubeId base, prism;
    int axis;
    bool reversed;
    FaceEmbedding e;
  };
  struct Cuboid {
    std::vector<PrismCube> cubes;
    EndSet body;
  };
  struct Stage {
    std::vector<Cuboid> cuboids;
    std::vector<std::pair<CubeId, CubeId>> lids;  // new non-prism cube, prism cube carrying it
  };

  const CubeComplex& c;
  GeodesicSolver solver;
  std::vector<int> cube_stage;
  std::vector<std::vector<CubeId>> faces_of;  // proper faces, descending dimension
  std::vector<Stage> stages;  // stage s builds C_{s+1} from C_s
  CubeId base_cube;

  Impl(const CubeComplex& cc, const Decomposition& d) : c(cc), solver(cc, kInfNorm) {
    const DecompositionVerdict v = verify_decomposition(c, d);
    if (!v.valid) throw Error(ErrorCode::kNotCollapsible, "decomposition does not verify: " + v.message);
    const int n = c.num_vertices();
    std::vector<int> vstage(n, -1);
    vstage[d.base_vertex] = 0;
    const int m = static_cast<int>(d.steps.size());
    for (int s = 0; s < m; ++s) {
      const CollapseStep& step = d.steps[m - 1 - s];
      for (auto [u, w] : step.new_vertices) vstage[w] = s + 1;
    }
    if (std::any_of(vstage.begin(), vstage.end(), [](int x) { return x < 0; })) {
      throw Error(ErrorCode::kNotCollapsible, "decomposition misses vertices");
    }
    cube_stage.resize(c.num_cubes());
    for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
      int st = 0;
      for (VertexId w : c.cube(q).corners) st = std::max(st, vstage[w]);
      cube_stage[q] = st;
    }
    base_cube = c.vertex_cube(d.base_vertex);
    faces_of.resize(c.num_cubes());
    for (CubeId r = 0; r < static_cast<CubeId>(c.num_cubes()); ++r) {
      for (CubeId q = r + 1; q < static_cast<CubeId>(c.num_cubes()); ++q) {
        if (c.cube(q).dim < c.cube(r).dim && c.contains(r, q)) faces_of[r].push_back(q);
      }
    }
    stages.resize(m);
    for (int s = 0; s < m; ++s) {
      const CollapseStep& step = d.steps[m - 1 - s];
      Stage& stage = stages[s];
      std::vector<VertexId> origin(n, -1);
      std::size_t pos = 0;
      for (const auto& cuboid : step.cuboids) {
        std::map<VertexId, VertexId> prime;
        for (std::size_t j = 0; j < cuboid.size(); ++j, ++pos) {
          prime[step.new_vertices[pos].first] = step.new_vertices[pos].second;
          origin[step.new_vertices[pos].second] = step.new_vertices[pos].first;
        }
        Cuboid cb;
        Full body(c.num_cubes());
        for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
          if (cube_stage[q] > s) continue;
          const auto& corners = c.cube(q).corners;
          if (!std::all_of(corners.begin(), corners.end(), [&](VertexId w) { return prime.count(w); })) continue;
          std::vector<VertexId> pc(corners.begin(), corners.end());
          for (VertexId w : corners) pc.push_back(prime[w]);
          const CubeId p = *c.find_cube(pc);
          FaceEmbedding e = c.embedding(q, p);
          int axis = 0;
          while (e.pinned[axis] < 0) ++axis;
          const bool reversed = e.pinned[axis] == 1;
          cb.cubes.push_back({q, p, axis, reversed, std::move(e)});
          body[q] = Box(c.cube(q).dim, Interval{0.0, 1.0});
        }
        cb.body = end_of_full(c, body);
        stage.cuboids.push_back(std::move(cb));
      }
      for (CubeId r = 0; r < static_cast<CubeId>(c.num_cubes()); ++r) {
        if (cube_stage[r] != s + 1) continue;
        std::vector<VertexId> below;
        for (VertexId w : c.cube(r).corners) {
          if (vstage[w] != s + 1) break;
          below.push_back(origin[w]);
        }
        if (below.size() != c.cube(r).corners.size()) continue;  // a prism cube
        below.insert(below.end(), c.cube(r).corners.begin(), c.cube(r).corners.end());
        stage.lids.emplace_back(r, *c.find_cube(below));
      }
    }
  }

  static Box lift(const PrismCube& pc, const Box& qbox, double lo_t, double hi_t, int dim) {
    Box out(dim);
    for (std::size_t a = 0; a < pc.e.axis.size(); ++a) out[pc.e.axis[a]] = map_interval(qbox[a], pc.e.flip[a]);
    out[pc.axis] = map_interval({lo_t, hi_t}, pc.reversed);
    return out;
  }

  static std::pair<Box, Interval> split(const PrismCube& pc, const Box& pbox) {
    Box q(pc.e.axis.size());
    for (std::size_t a = 0; a < pc.e.axis.size(); ++a) q[a] = map_interval(pbox[pc.e.axis[a]], pc.e.flip[a]);
    return {std::move(q), map_interval(pbox[pc.axis], pc.reversed)};
  }

  void put_lids(const Stage& stage, Full& out) const {
    for (auto [r, p] : stage.lids) {
      if (out[p]) out[r] = restrict_box(c, *out[p], p, r);
    }
  }

  // Boxes cubes of C_k that meet the set only through a boxed face.
  void close_up(Full& f, int k) const {
    for (CubeId r = 0; r < static_cast<CubeId>(f.size()); ++r) {
      if (f[r] || cube_stage[r] > k) continue;
      for (CubeId q : faces_of[r]) {
        if (!f[q]) continue;
        f[r] = embed_box(c, *f[q], q, r);
        break;
      }
    }
  }

  // Ball of x inside C_k; x and the result only carry cubes of C_k.
  Full ball_at(int k, const Full& x, double r) const {
    Full out(c.num_cubes());
    if (k == 0) {
      if (x[base_cube]) out[base_cube] = Box{};
      return out;
    }
    const int s = k - 1;
    const Stage& stage = stages[s];
    Full below(c.num_cubes());
    for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
      if (cube_stage[q] <= s) below[q] = x[q];
    }
    if (any_box(below)) {
      const Full y = ball_at(s, below, r);
      for (CubeId q = 0; q < static_cast<CubeId>(c.num_cubes()); ++q) {
        if (cube_stage[q] <= s) out[q] = y[q];
      }
      EndSet from;
      for (const Cuboid& cb : stage.cuboids) {
        bool meets = false;
        double top = 0.0;
        for (const PrismCube& pc : cb.cubes) {
          if (!below[pc.base]) continue;
          meets = true;
          if (x[pc.prism]) top = std::max(top, split(pc, *x[pc.prism]).second.second);
        }
        double height;
        if (meets) {
          height = std::min(1.0, top + r);
        } else {
          if (from.empty()) from = end_of_full(c, below);
          const double r0 = solver.distance(from, cb.body).length;
          if (r0 > r + kEps) continue;
          height = std::clamp(r - r0, 0.0, 1.0);
        }
        for (const PrismCube& pc : cb.cubes) {
          if (y[pc.base]) out[pc.prism] = lift(pc, *y[pc.base], 0.0, height, c.cube(pc.prism).dim);
        }
      }
      put_lids(stage, out);
      return out;
    }
    // x sits inside the prism over a single cuboid
    const Cuboid* home = nullptr;
    for (const Cuboid& cb : stage.cuboids) {
      for (const PrismCube& pc : cb.cubes) {
        if (!x[pc.prism]) continue;
        if (home && home != &cb) throw Error(ErrorCode::kBadParams, "set is not a generalized cuboid");
        home = &cb;
      }
    }
    if (!home) throw Error(ErrorCode::kBadParams, "set is not a generalized cuboid");
    Full px(c.num_cubes());
    double lo = 1.0, hi = 0.0;
    for (const PrismCube& pc : home->cubes) {
      if (!x[pc.prism]) continue;
      auto [qbox, t] = split(pc, *x[pc.prism]);
      px[pc.base] = std::move(qbox);
      lo = std::min(lo, t.first);
      hi = std::max(hi, t.second);
    }
    close_up(px, s);
    if (r > lo + kEps) return ball_at(k, ball_at(k, x, lo), r - lo);
    const Full y = ball_at(s, px, r);
    const double lo_t = std::max(0.0, lo - r), hi_t = std::min(1.0, hi + r);
    for (const PrismCube& pc : home->cubes) {
      if (!y[pc.base]) continue;
      out[pc.prism] = lift(pc, *y[pc.base], lo_t, hi_t, c.cube(pc.prism).dim);
      if (lo_t <= kEps) out[pc.base] = y[pc.base];
    }
    put_lids(stage, out);
    close_up(out, k);
    return out;
  }
};

BallCalculator::BallCalculator(const CubeComplex& c, const Decomposition& d) : impl_(std::make_unique<Impl>(c, d)) {}
BallCalculator::~BallCalculator() = default;

GeneralizedCuboid BallCalculator::ball(const GeneralizedCuboid& x, double r) const {
  if (!(r >= 0.0) || std::isinf(r)) throw Error(ErrorCode::kBadParams, "radius must be finite and >= 0");
  const CubeComplex& c = impl_->c;
  Full f = to_full(c, x);
  if (!any_box(f)) throw Error(ErrorCode::kBadParams, "empty set");
  return to_public(c, impl_->ball_at(static_cast<int>(impl_->stages.size()), f, r));
}

GeneralizedCuboid ball_of_gcuboid(const CubeComplex& c, const Decomposition& d, const GeneralizedCuboid& x,
                                  double r) {
  return BallCalculator(c, d).ball(x, r);
}

// ---------------------------------------------------------------------------
// intersections of families

PropertyPVerdict property_P_check(const CubeComplex& c, std::span<const GeneralizedCuboid> xs) {
  PropertyPVerdict v;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const GeneralizedCuboid pair[2] = {xs[i], xs[j]};
      if (!gcuboid_intersect(c, pair)) {
        v.kind = PropertyPVerdict::Kind::kPrecondFailed;
        v.disjoint_pair = {static_cast<int>(i), static_cast<int>(j)};
        return v;
      }
    }
  }
  auto all = gcuboid_intersect(c, xs);
  if (!all) {
    v.kind = PropertyPVerdict::Kind::kEmpty;
    return v;
  }
  const auto& [k, box] = *all->boxes.begin();
  PointLocation w{k, {}};
  for (auto [lo, hi] : box) w.coords.push_back(lo);
  v.witness = canonical_point(c, w);
  v.intersection = std::move(all);
  return v;
}

namespace {

struct Scorer {
  const GeodesicSolver& solver;
  std::span<const PointLocation> centers;
  std::span<const double> radii;

  double operator()(const PointLocation& p) const {
    double worst = -kInfNorm;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      worst = std::max(worst, solver.distance(p, centers[i]).length - radii[i]);
    }
    return worst;
  }
};

}  // namespace

ProbeVerdict hyperconvexity_probe(const CubeComplex& c, std::span<const PointLocation> centers,
                                  std::span<const double> radii, int k, const Decomposition* d, double tol) {
  if (centers.size() != radii.size() || centers.empty()) throw Error(ErrorCode::kBadParams, "centers and radii differ");
  if (k < 1) throw Error(ErrorCode::kBadParams, "resolution must be >= 1");
  for (double r : radii) {
    if (!(r >= 0.0) || std::isinf(r)) throw Error(ErrorCode::kBadParams, "radius must be finite and >= 0");
  }
  ProbeVerdict v;
  v.resolution = k;
  GeodesicSolver solver(c, kInfNorm);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (solver.distance(centers[i], centers[j]).length > radii[i] + radii[j] + tol) {
        v.kind = ProbeVerdict::Kind::kNotAdmissible;
        v.bad_pair = {static_cast<int>(i), static_cast<int>(j)};
        return v;
      }
    }
  }
  if (d) {
    BallCalculator calc(c, *d);
    std::vector<GeneralizedCuboid> balls;
    for (std::size_t i = 0; i < centers.size(); ++i) balls.push_back(calc.ball(point_cuboid(c, centers[i]), radii[i]));
    PropertyPVerdict pv = property_P_check(c, balls);
    if (pv.kind == PropertyPVerdict::Kind::kCommonPoint) {
      v.kind = ProbeVerdict::Kind::kCommonPointFound;
      v.point = pv.witness;
      v.method = "balls";
      return v;
    }
  }
  double total = 0.0;
  for (CubeId q : c.maximal_cubes()) total += std::pow(k + 1.0, c.cube(q).dim);
  if (total > 1e6) throw Error(ErrorCode::kTooLarge, "sample lattice too large");
  const Scorer score{solver, centers, radii};
  v.method = "grid";
  std::set<std::pair<CubeId, std::vector<long>>> seen;
  std::vector<std::pair<double, PointLocation>> best;  // a few lowest samples
  for (CubeId q : c.maximal_cubes()) {
    const int dim = c.cube(q).dim;
    std::vector<int> z(dim, 0);
    while (true) {
      PointLocation p{q, {}};
      for (int l = 0; l < dim; ++l) p.coords.push_back(static_cast<double>(z[l]) / k);
      p = canonical_point(c, p);
      std::vector<long> key;
      for (double x : p.coords) key.push_back(std::lround(x * k));
      if (seen.emplace(p.cube, std::move(key)).second) {
        const double e = score(p);
        if (e <= tol) {
          v.kind = ProbeVerdict::Kind::kCommonPointFound;
          v.point = p;
          v.best_excess = e;
          return v;
        }
        best.emplace_back(e, p);
        std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (best.size() > 5) best.pop_back();
      }
      int l = 0;
      while (l < dim && z[l] == k) z[l++] = 0;
      if (l == dim) break;
      ++z[l];
    }
  }
  // pattern search inside a maximal cube around each of the best samples
  double overall = best.empty() ? kInfNorm : best.front().first;
  for (auto [e, p0] : best) {
    for (CubeId q : c.maximal_cofaces(p0.cube)) {
      std::vector<double> x = coords_in(c, p0, q);
      double cur = e;
      for (double step = 0.5 / k; step > 1e-9; step *= 0.5) {
        bool moved = true;
        while (moved) {
          moved = false;
          for (std::size_t l = 0; l < x.size(); ++l) {
            for (double sgn : {-1.0, 1.0}) {
              std::vector<double> y = x;
              y[l] = std::clamp(y[l] + sgn * step, 0.0, 1.0);
              if (y[l] == x[l]) continue;
              const double ey = score(PointLocation{q, y});
              if (ey < cur - 1e-15) {
                cur = ey;
                x = std::move(y);
                moved = true;
              }
            }
          }
        }
      }
      overall = std::min(overall, cur);
      if (cur <= tol) {
        v.kind = ProbeVerdict::Kind::kCommonPointFound;
        v.point = canonical_point(c, PointLocation{q, x});
        v.best_excess = cur;
        v.method = "grid+descent";
        return v;
      }
    }
  }
  v.kind = ProbeVerdict::Kind::kNoCommonPointAtResolution;
  v.best_excess = overall;
  return v;
}

}  // namespace cubik
