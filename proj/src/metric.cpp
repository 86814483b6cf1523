#include "cubik/metric.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <tuple>

#include "cubik/error.hpp"
#include "cubik/coloring.hpp"
#include "cubik/hyperplanes.hpp"

namespace cubik {

double norm_p(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  // scale by the max entry to keep pow() in range
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double cube_distance(std::span<const double> x, std::span<const double> y, double p) {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return norm_p(d, p);
}

std::optional<CubeId> common_cube(const CubeComplex& c, const PointLocation& x, const PointLocation& y) {
  std::optional<CubeId> best;
  for (CubeId k : c.maximal_cofaces(x.cube)) {
    if (!c.contains(k, y.cube)) continue;
    // shrink to the smallest face of k holding both carriers
    std::vector<VertexId> both = c.cube(x.cube).corners;
    both.insert(both.end(), c.cube(y.cube).corners.begin(), c.cube(y.cube).corners.end());
    const Cube& q = c.cube(k);
    unsigned and_mask = ~0u, or_mask = 0u;
    for (VertexId v : both) {
      unsigned i = static_cast<unsigned>(c.corner_index(k, v));
      and_mask &= i;
      or_mask |= i;
    }
    std::vector<VertexId> face;
    for (unsigned i = 0; i < q.corners.size(); ++i) {
      if ((i & and_mask) == and_mask && (i | or_mask) == or_mask) face.push_back(q.corners[i]);
    }
    auto id = c.find_cube(face);
    if (id && (!best || c.cube(*id).dim < c.cube(*best).dim)) best = id;
  }
  return best;
}

double string_length(const CubeComplex& c, const MString& s, double p) {
  if (s.points.empty()) throw Error(ErrorCode::kBrokenString, "string has no points");
  const bool given = !s.carriers.empty();
  if (given && s.carriers.size() + 1 != s.points.size()) {
    throw Error(ErrorCode::kBrokenString, "need one carrier per segment");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
    PointLocation x = canonical_point(c, s.points[i]);
    PointLocation y = canonical_point(c, s.points[i + 1]);
    CubeId k;
    if (given) {
      k = s.carriers[i];
      if (k < 0 || k >= static_cast<CubeId>(c.num_cubes()) || !c.contains(k, x.cube) || !c.contains(k, y.cube)) {
        throw Error(ErrorCode::kBrokenString, "carrier of segment " + std::to_string(i) + " misses an endpoint");
      }
    } else {
      auto found = common_cube(c, x, y);
      if (!found) throw Error(ErrorCode::kBrokenString, "no cube holds segment " + std::to_string(i));
      k = *found;
    }
    total += cube_distance(coords_in(c, x, k), coords_in(c, y, k), p);
  }
  return total;
}

EndSet point_end(const CubeComplex& c, const PointLocation& p) {
  PointLocation q = canonical_point(c, p);
  EndSet out;
  for (CubeId k : c.maximal_cofaces(q.cube)) {
    std::vector<double> x = coords_in(c, q, k);
    out.push_back({k, x, x});
  }
  return out;
}

namespace {

// Face coordinates -> coordinates of one cube containing the face.
struct Chart {
  std::vector<int> face_axis;  // per cube axis, -1 when pinned
  std::vector<char> flip;
  std::vector<double> pinned;

  void to_cube(const std::vector<double>& y, std::vector<double>& out) const {
    out.resize(face_axis.size());
    for (std::size_t l = 0; l < face_axis.size(); ++l) {
      int a = face_axis[l];
      out[l] = a < 0 ? pinned[l] : (flip[l] ? 1.0 - y[a] : y[a]);
    }
  }
  void to_face(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t l = 0; l < face_axis.size(); ++l) {
      int a = face_axis[l];
      if (a >= 0) y[a] = flip[l] ? 1.0 - x[l] : x[l];
    }
  }
};

Chart make_chart(const CubeComplex& c, CubeId face, CubeId cube) {
  FaceEmbedding e = c.embedding(face, cube);
  const int d = c.cube(cube).dim;
  Chart ch{std::vector<int>(d, -1), std::vector<char>(d, 0), std::vector<double>(d, 0.0)};
  for (std::size_t a = 0; a < e.axis.size(); ++a) {
    ch.face_axis[e.axis[a]] = static_cast<int>(a);
    ch.flip[e.axis[a]] = e.flip[a] ? 1 : 0;
  }
  for (int l = 0; l < d; ++l) {
    if (e.pinned[l] >= 0) ch.pinned[l] = e.pinned[l];
  }
  return ch;
}

// One side of a block: the neighbouring point seen through the chart gives
// the pinned residuals c and the free-axis target a.
struct Term {
  std::vector<double> c, a;
};

void make_term(const Chart& ch, const std::vector<double>& other, int face_dim, Term& t) {
  t.c.clear();
  t.a.assign(face_dim, 0.0);
  for (std::size_t l = 0; l < ch.face_axis.size(); ++l) {
    int a = ch.face_axis[l];
    if (a < 0) {
      t.c.push_back(ch.pinned[l] - other[l]);
    } else {
      t.a[a] = ch.flip[l] ? 1.0 - other[l] : other[l];
    }
  }
}

double term_value(const Term& t, const std::vector<double>& y, double p) {
  std::vector<double> v = t.c;
  for (std::size_t j = 0; j < y.size(); ++j) v.push_back(y[j] - t.a[j]);
  return norm_p(v, p);
}

double project_segment_t(const std::vector<double>& y, const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    num += (y[j] - a[j]) * (b[j] - a[j]);
    den += (b[j] - a[j]) * (b[j] - a[j]);
  }
  return den == 0.0 ? 0.0 : std::clamp(num / den, 0.0, 1.0);
}

// Exact minimiser of |(cA, y-a)|_p + |(cB, y-b)|_p over y in [0,1]^k, moving
// y as little as the norm allows. Without B the block only sees A.
void solve_block(double p, const Term& A, const Term* B, std::vector<double>& y) {
  const std::size_t k = y.size();
  if (!B) {
    y = A.a;
    return;
  }
  const auto& a = A.a;
  const auto& b = B->a;
  if (p == 1.0) {
    for (std::size_t j = 0; j < k; ++j) y[j] = std::clamp(y[j], std::min(a[j], b[j]), std::max(a[j], b[j]));
    return;
  }
  if (std::isinf(p)) {
    const double alpha = norm_p(A.c, p), beta = norm_p(B->c, p);
    double spread = 0.0, cur = alpha;
    for (std::size_t j = 0; j < k; ++j) {
      spread = std::max(spread, std::abs(a[j] - b[j]));
      cur = std::max(cur, std::abs(y[j] - a[j]));
    }
    const double v = std::max(alpha + beta, spread);
    const double ra = std::clamp(cur, alpha, v - beta);
    const double rb = v - ra;
    for (std::size_t j = 0; j < k; ++j) {
      double lo = std::max({a[j] - ra, b[j] - rb, 0.0});
      double hi = std::min({a[j] + ra, b[j] + rb, 1.0});
      y[j] = lo <= hi ? std::clamp(y[j], lo, hi) : 0.5 * (lo + hi);
    }
    return;
  }
  const double ca = norm_p(A.c, p), cb = norm_p(B->c, p);
  double t;
  if (ca + cb == 0.0) {
    t = project_segment_t(y, a, b);
  } else if (p == 2.0) {
    t = ca / (ca + cb);
  } else {
    // best effort for other p: golden section along the segment a-b
    auto f = [&](double s) {
      std::vector<double> z(k);
      for (std::size_t j = 0; j < k; ++j) z[j] = a[j] + s * (b[j] - a[j]);
      return term_value(A, z, p) + term_value(*B, z, p);
    };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (f(m1) <= f(m2)) hi = m2; else lo = m1;
    }
    t = 0.5 * (lo + hi);
  }
  for (std::size_t j = 0; j < k; ++j) y[j] = a[j] + t * (b[j] - a[j]);
}

void clamp_box(const BoxEnd& box, const std::vector<double>& x, std::vector<double>& out) {
  out.resize(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) out[l] = std::clamp(x[l], box.lo[l], box.hi[l]);
}

// A fixed gallery K_0..K_m with break faces F_1..F_m.
struct Problem {
  std::vector<CubeId> cubes;
  std::vector<CubeId> faces;
  std::vector<const Chart*> left, right;  // F_i into K_{i-1}, into K_i
  const BoxEnd* start = nullptr;
  const BoxEnd* target = nullptr;  // nullptr: free end at the last break point
};

struct State {
  std::vector<double> s, t;
  std::vector<std::vector<double>> y;
};

class Evaluator {
 public:
  Evaluator(double p, const SolverOptions& o) : p_(p), o_(o) {}

  // Coordinates in K_i of string point i (s, y_1.., t) for the segment in K_i.
  void tail_in(const Problem& pr, const State& st, std::size_t i, std::vector<double>& out) const {
    if (i == 0) out = st.s;
    else pr.right[i - 1]->to_cube(st.y[i - 1], out);
  }
  void head_in(const Problem& pr, const State& st, std::size_t i, std::vector<double>& out) const {
    const std::size_t m = pr.faces.size();
    if (i < m) pr.left[i]->to_cube(st.y[i], out);
    else out = st.t;
  }

  // Length with every segment norm taken over (segment, mu).
  double length(const Problem& pr, const State& st, double mu = 0.0) const {
    const std::size_t m = pr.faces.size();
    const std::size_t segs = pr.target ? m + 1 : m;
    double total = 0.0;
    std::vector<double> x, z;
    for (std::size_t i = 0; i < segs; ++i) {
      tail_in(pr, st, i, x);
      head_in(pr, st, i, z);
      if (mu > 0.0) {
        for (std::size_t l = 0; l < x.size(); ++l) x[l] -= z[l];
        x.push_back(mu);
        total += norm_p(x, p_);
      } else {
        total += cube_distance(x, z, p_);
      }
    }
    return total;
  }

  // Cyclic block descent. For 1 < p < inf the segment norms are first
  // smoothed by an extra coordinate mu -> 0: at mu > 0 the objective is
  // differentiable and descent cannot stall where a segment has length 0.
  double minimize(const Problem& pr, State& st) const {
    static constexpr double kSchedule[] = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 0.0};
    const bool smooth = p_ > 1.0 && !std::isinf(p_);
    double out = 0.0;
    for (double mu : kSchedule) {
      if (!smooth && mu > 0.0) continue;
      out = descend(pr, st, mu);
    }
    return out;
  }

 private:
  double descend(const Problem& pr, State& st, double mu) const {
    const std::size_t m = pr.faces.size();
    std::vector<double> x;
    Term A, B;
    double prev = length(pr, st, mu);
    for (int sweep = 0; sweep < o_.max_sweeps; ++sweep) {
      if (m > 0 || pr.target) {
        head_in(pr, st, 0, x);
        clamp_box(*pr.start, x, st.s);
      }
      for (std::size_t i = 1; i <= m; ++i) {
        const int fd = static_cast<int>(st.y[i - 1].size());
        tail_in(pr, st, i - 1, x);
        make_term(*pr.left[i - 1], x, fd, A);
        if (mu > 0.0) A.c.push_back(mu);
        const bool has_next = i < m || pr.target;
        if (has_next) {
          head_in(pr, st, i, x);
          make_term(*pr.right[i - 1], x, fd, B);
          if (mu > 0.0) B.c.push_back(mu);
        }
        solve_block(p_, A, has_next ? &B : nullptr, st.y[i - 1]);
      }
      if (pr.target) {
        tail_in(pr, st, m, x);
        clamp_box(*pr.target, x, st.t);
      }
      const double cur = length(pr, st, mu);
      if (std::abs(prev - cur) < o_.sweep_tol) return cur;
      prev = cur;
    }
    return prev;
  }

 private:
  double p_;
  const SolverOptions& o_;
};

}  // namespace

struct GeodesicSolver::Impl {
  const CubeComplex& c;
  std::vector<std::vector<CubeAdjacency>> adjacency;
  std::map<std::pair<CubeId, CubeId>, Chart> charts;

  // hyperplane data for lower bounds; empty when hyperplanes are unusable
  std::optional<HyperplaneStructure> hs;
  std::vector<std::vector<int>> axis_plane;  // per cube: hyperplane of each axis
  std::vector<std::vector<char>> axis_rev;   // corner 0 lies on side 1
  Coloring classes;                          // of the crossing graph

  explicit Impl(const CubeComplex& cc) : c(cc), adjacency(cube_adjacency(cc)) {
    try {
      hs.emplace(cc, false);
    } catch (const Error&) {
      return;
    }
    axis_plane.resize(cc.num_cubes());
    axis_rev.resize(cc.num_cubes());
    for (CubeId k = 0; k < static_cast<CubeId>(cc.num_cubes()); ++k) {
      const Cube& q = cc.cube(k);
      std::vector<int> seen;
      for (int l = 0; l < q.dim; ++l) {
        VertexId u = q.corners[0], v = q.corners[std::size_t{1} << l];
        int h = hs->hyperplane_of(u, v);
        if (h < 0 || hs->side_of(h, u) == hs->side_of(h, v) ||
            std::find(seen.begin(), seen.end(), h) != seen.end()) {
          hs.reset();
          return;
        }
        seen.push_back(h);
        axis_plane[k].push_back(h);
        axis_rev[k].push_back(static_cast<char>(hs->side_of(h, u)));
      }
    }
    classes = color_greedy(hs->crossing());
  }

  const Chart& chart(CubeId face, CubeId cube) {
    auto key = std::make_pair(face, cube);
    auto it = charts.find(key);
    if (it == charts.end()) it = charts.emplace(key, make_chart(c, face, cube)).first;
    return it->second;
  }

  std::optional<CubeId> shared_face(CubeId a, CubeId b) const {
    const auto& lst = adjacency[a];
    auto it = std::lower_bound(lst.begin(), lst.end(), b,
                               [](const CubeAdjacency& x, CubeId v) { return x.other < v; });
    if (it == lst.end() || it->other != b) return std::nullopt;
    return it->shared_face;
  }

  // phi_h over a box of cube k, as an interval
  std::pair<double, double> phi(int h, CubeId k, const std::vector<double>& lo, const std::vector<double>& hi) const {
    const auto& ax = axis_plane[k];
    for (std::size_t l = 0; l < ax.size(); ++l) {
      if (ax[l] != h) continue;
      if (axis_rev[k][l]) return {1.0 - hi[l], 1.0 - lo[l]};
      return {lo[l], hi[l]};
    }
    double s = hs->side_of(h, c.cube(k).corners[0]);
    return {s, s};
  }
};

GeodesicSolver::GeodesicSolver(const CubeComplex& c, double p, SolverOptions options)
    : c_(&c), p_(p), options_(options), impl_(std::make_unique<Impl>(c)) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kBadParams, "p must be >= 1");
  if (c.dimension() > kMaxDimension) throw Error(ErrorCode::kDimensionTooLarge, "dimension above 16");
}

GeodesicSolver::~GeodesicSolver() = default;
GeodesicSolver::GeodesicSolver(GeodesicSolver&&) noexcept = default;

namespace {

double gap(std::pair<double, double> x, std::pair<double, double> y) {
  return std::max({0.0, y.first - x.second, x.first - y.second});
}

std::pair<double, double> hull(std::pair<double, double> x, std::pair<double, double> y) {
  return {std::min(x.first, y.first), std::max(x.second, y.second)};
}

PointLocation canonical_or_self(const CubeComplex& c, CubeId cube, const std::vector<double>& x) {
  return canonical_point(c, {cube, x}, 1e-15);
}

}  // namespace

DistanceResult GeodesicSolver::distance(const EndSet& from, const EndSet& to) const {
  // solve in a fixed endpoint order so that swapping inputs is exactly symmetric
  const auto less = [](const BoxEnd& x, const BoxEnd& y) {
    return std::tie(x.cube, x.lo, x.hi) < std::tie(y.cube, y.lo, y.hi);
  };
  if (!std::lexicographical_compare(to.begin(), to.end(), from.begin(), from.end(), less)) {
    return solve(from, to);
  }
  DistanceResult r = solve(to, from);
  std::reverse(r.string.points.begin(), r.string.points.end());
  std::reverse(r.string.carriers.begin(), r.string.carriers.end());
  return r;
}

DistanceResult GeodesicSolver::solve(const EndSet& from, const EndSet& to) const {
  const CubeComplex& c = *c_;
  Impl& im = *impl_;
  if (from.empty() || to.empty()) throw Error(ErrorCode::kBadParams, "empty endpoint set");
  for (const EndSet* es : {&from, &to}) {
    for (const BoxEnd& b : *es) {
      if (b.cube < 0 || b.cube >= static_cast<CubeId>(c.num_cubes()) || !c.is_maximal(b.cube) ||
          b.lo.size() != static_cast<std::size_t>(c.cube(b.cube).dim) || b.hi.size() != b.lo.size()) {
        throw Error(ErrorCode::kBadParams, "endpoint boxes must sit in maximal cubes");
      }
    }
  }

  // vertex-path string: an upper bound, and the answer when nothing beats it
  double best = kInfNorm;
  MString best_string;
  for (const BoxEnd& sb : from) {
    const Cube& sq = c.cube(sb.cube);
    std::vector<double> corner(sb.lo.size());
    unsigned idx = 0;
    for (std::size_t l = 0; l < sb.lo.size(); ++l) {
      corner[l] = std::round(sb.lo[l]);
      if (corner[l] > 0.5) idx |= 1u << l;
    }
    const VertexId sv = sq.corners[idx];
    const double s_cost = cube_distance(sb.lo, corner, p_);
    std::vector<int> dist = c.graph().bfs(sv);
    for (const BoxEnd& tb : to) {
      std::vector<double> tc(tb.lo.size());
      unsigned tidx = 0;
      for (std::size_t l = 0; l < tb.lo.size(); ++l) {
        tc[l] = std::round(tb.lo[l]);
        if (tc[l] > 0.5) tidx |= 1u << l;
      }
      const VertexId tv = c.cube(tb.cube).corners[tidx];
      if (dist[tv] < 0) continue;
      const double len = s_cost + dist[tv] + cube_distance(tb.lo, tc, p_);
      if (len >= best) continue;
      best = len;
      std::vector<VertexId> path{tv};
      while (path.back() != sv) {
        for (VertexId w : c.graph().neighbors(path.back())) {
          if (dist[w] == dist[path.back()] - 1) {
            path.push_back(w);
            break;
          }
        }
      }
      std::reverse(path.begin(), path.end());
      MString s;
      s.points.push_back(canonical_or_self(c, sb.cube, sb.lo));
      s.carriers.push_back(sb.cube);
      for (std::size_t i = 0; i < path.size(); ++i) {
        s.points.push_back({c.vertex_cube(path[i]), {}});
        if (i + 1 < path.size()) s.carriers.push_back(*c.edge_cube(path[i], path[i + 1]));
      }
      s.carriers.push_back(tb.cube);
      s.points.push_back(canonical_or_self(c, tb.cube, tb.lo));
      best_string = std::move(s);
    }
  }
  if (std::isinf(best)) throw Error(ErrorCode::kUnreachable, "endpoints lie in different components");

  const int n = std::max(1, c.dimension());
  const double cap_raw = options_.cap_factor * (n + 2) * (std::ceil(best) + 1.0);
  const std::size_t max_cubes = static_cast<std::size_t>(cap_raw) + 1;

  // Lower bound on the distance from cube k to the target. phi_h moves only
  // inside cubes having h as an axis, and a cube has at most one axis in
  // each colour class of the crossing graph. With D_j the phi-gap summed over
  // class j, Minkowski gives length >= |(D_1, .., D_r)|_p; a cube of
  // dimension <= n also gives length >= n^(1/p-1) * sum_j D_j.
  std::vector<double> hmemo(c.num_cubes(), -1.0);
  std::vector<std::pair<double, double>> tphi;
  const double l1_scale = std::isinf(p_) ? 1.0 / n : std::pow(static_cast<double>(n), 1.0 / p_ - 1.0);
  // plus a greedy heaviest non-crossing set, which often beats the classes
  std::vector<char> chosen;
  if (im.hs) {
    const int nh = im.hs->size();
    tphi.resize(nh);
    std::vector<double> weight(nh);
    for (int h = 0; h < nh; ++h) {
      auto t = im.phi(h, to[0].cube, to[0].lo, to[0].hi);
      for (const BoxEnd& b : to) t = hull(t, im.phi(h, b.cube, b.lo, b.hi));
      auto s = im.phi(h, from[0].cube, from[0].lo, from[0].hi);
      for (const BoxEnd& b : from) s = hull(s, im.phi(h, b.cube, b.lo, b.hi));
      tphi[h] = t;
      weight[h] = gap(s, t);
    }
    std::vector<int> order(nh);
    for (int h = 0; h < nh; ++h) order[h] = h;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return weight[x] > weight[y]; });
    chosen.assign(nh, 0);
    for (int h : order) {
      if (weight[h] <= 0.0) break;
      bool free = true;
      for (VertexId g : im.hs->crossing().neighbors(h)) free = free && !chosen[g];
      if (free) chosen[h] = 1;
    }
  }
  auto heuristic = [&](CubeId k) {
    if (hmemo[k] >= 0.0) return hmemo[k];
    if (!im.hs) return hmemo[k] = 0.0;
    const int d = c.cube(k).dim;
    std::vector<double> lo(d, 0.0), hi(d, 1.0);
    std::vector<double> per_class(im.classes.num_colors, 0.0);
    double all = 0.0, chain = 0.0;
    for (int h = 0; h < im.hs->size(); ++h) {
      double g = gap(im.phi(h, k, lo, hi), tphi[h]);
      per_class[im.classes.color[h] - 1] += g;
      all += g;
      if (chosen[h]) chain += g;
    }
    return hmemo[k] = std::max({norm_p(per_class, p_), l1_scale * all, chain});
  };

  struct Node {
    std::vector<CubeId> cubes, faces;
    const BoxEnd* start;
    State state;
  };
  std::vector<Node> nodes;
  // bounds are compared on a 1e-9 grid; ties go to the longer prefix
  using Entry = std::tuple<std::int64_t, int, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  Evaluator ev(p_, options_);

  auto problem_of = [&](const Node& nd, const BoxEnd* target) {
    Problem pr;
    pr.cubes = nd.cubes;
    pr.faces = nd.faces;
    for (std::size_t i = 0; i < nd.faces.size(); ++i) {
      pr.left.push_back(&im.chart(nd.faces[i], nd.cubes[i]));
      pr.right.push_back(&im.chart(nd.faces[i], nd.cubes[i + 1]));
    }
    pr.start = nd.start;
    pr.target = target;
    return pr;
  };

  // finish at every target box on the last cube, then queue the prefix
  auto push = [&](Node nd) {
    const CubeId last = nd.cubes.back();
    for (const BoxEnd& tb : to) {
      if (tb.cube != last) continue;
      Problem pr = problem_of(nd, &tb);
      State st = nd.state;
      std::vector<double> x;
      if (nd.faces.empty()) x = st.s;
      else pr.right.back()->to_cube(st.y.back(), x);
      clamp_box(tb, x, st.t);
      double len = ev.minimize(pr, st);
      if (len < best - options_.prune_tol) {
        best = len;
        MString s;
        s.points.push_back(canonical_or_self(c, nd.cubes.front(), st.s));
        for (std::size_t i = 0; i < nd.faces.size(); ++i) s.points.push_back(canonical_or_self(c, nd.faces[i], st.y[i]));
        s.points.push_back(canonical_or_self(c, tb.cube, st.t));
        s.carriers = nd.cubes;
        best_string = std::move(s);
      }
    }
    Problem pr = problem_of(nd, nullptr);
    // any completion leaves through the last break face
    double lb = ev.minimize(pr, nd.state) + heuristic(nd.faces.empty() ? last : nd.faces.back());
    if (lb < best - options_.prune_tol && nd.cubes.size() < max_cubes) {
      open.emplace(static_cast<std::int64_t>(std::llround(lb * 1e9)), -static_cast<int>(nd.cubes.size()),
                   static_cast<std::int64_t>(nodes.size()));
      nodes.push_back(std::move(nd));
    }
  };

  for (const BoxEnd& sb : from) push(Node{{sb.cube}, {}, &sb, State{sb.lo, {}, {}}});

  std::int64_t expanded = 0;
  while (!open.empty()) {
    auto [key, depth, id] = open.top();
    (void)depth;
    open.pop();
    if (static_cast<double>(key) * 1e-9 >= best - options_.prune_tol) break;
    if (++expanded > options_.node_budget) throw Error(ErrorCode::kTooLarge, "gallery search exceeded its node budget");
    Node cur = std::move(nodes[id]);
    nodes[id] = Node{};
    const CubeId last = cur.cubes.back();
    std::vector<double> x;
    for (const CubeAdjacency& adj : im.adjacency[last]) {
      if (std::find(cur.cubes.begin(), cur.cubes.end(), adj.other) != cur.cubes.end()) continue;
      Node child = cur;
      child.cubes.push_back(adj.other);
      child.faces.push_back(adj.shared_face);
      // warm start the new break point at the projection of the previous one
      const Chart& into_last = im.chart(adj.shared_face, last);
      if (cur.faces.empty()) x = cur.state.s;
      else im.chart(cur.faces.back(), last).to_cube(cur.state.y.back(), x);
      std::vector<double> y(c.cube(adj.shared_face).dim, 0.5);
      into_last.to_face(x, y);
      child.state.y.push_back(std::move(y));
      push(std::move(child));
    }
  }

  DistanceResult out;
  out.length = best;
  out.galleries = expanded;
  out.string = std::move(best_string);
  return out;
}

DistanceResult GeodesicSolver::distance(const PointLocation& a, const PointLocation& b) const {
  return distance(point_end(*c_, a), point_end(*c_, b));
}

DistanceResult GeodesicSolver::along_gallery(std::span<const CubeId> gallery, const PointLocation& a,
                                             const PointLocation& b) const {
  const CubeComplex& c = *c_;
  Impl& im = *impl_;
  if (gallery.empty()) throw Error(ErrorCode::kBadParams, "empty gallery");
  Problem pr;
  pr.cubes.assign(gallery.begin(), gallery.end());
  for (std::size_t i = 0; i + 1 < gallery.size(); ++i) {
    auto f = im.shared_face(gallery[i], gallery[i + 1]);
    if (!f) throw Error(ErrorCode::kBrokenString, "consecutive gallery cubes do not meet");
    pr.faces.push_back(*f);
    pr.left.push_back(&im.chart(*f, gallery[i]));
    pr.right.push_back(&im.chart(*f, gallery[i + 1]));
  }
  PointLocation ca = canonical_point(c, a), cb = canonical_point(c, b);
  if (!c.contains(gallery.front(), ca.cube) || !c.contains(gallery.back(), cb.cube)) {
    throw Error(ErrorCode::kBrokenString, "endpoints outside the gallery ends");
  }
  std::vector<double> xa = coords_in(c, ca, gallery.front()), xb = coords_in(c, cb, gallery.back());
  BoxEnd sb{gallery.front(), xa, xa}, tb{gallery.back(), xb, xb};
  pr.start = &sb;
  pr.target = &tb;
  State st{xa, xb, {}};
  for (CubeId f : pr.faces) st.y.emplace_back(c.cube(f).dim, 0.5);
  Evaluator ev(p_, options_);
  DistanceResult out;
  out.length = ev.minimize(pr, st);
  out.string.points.push_back(ca);
  for (std::size_t i = 0; i < pr.faces.size(); ++i) out.string.points.push_back(canonical_or_self(c, pr.faces[i], st.y[i]));
  out.string.points.push_back(cb);
  out.string.carriers = pr.cubes;
  return out;
}

BreakResult single_break_distance(const CubeComplex& c, const PointLocation& x, CubeId k1, const PointLocation& z,
                                  CubeId k2, double p) {
  PointLocation cx = canonical_point(c, x), cz = canonical_point(c, z);
  if (!c.contains(k1, cx.cube) || !c.contains(k2, cz.cube)) {
    throw Error(ErrorCode::kBrokenString, "points outside their cubes");
  }
  std::vector<VertexId> a = c.cube(k1).corners, b = c.cube(k2).corners, common;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  auto face = common.empty() ? std::nullopt : c.find_cube(common);
  if (!face) throw Error(ErrorCode::kBrokenString, "cubes do not meet");
  const Chart left = make_chart(c, *face, k1), right = make_chart(c, *face, k2);
  const int fd = c.cube(*face).dim;
  Term A, B;
  make_term(left, coords_in(c, cx, k1), fd, A);
  make_term(right, coords_in(c, cz, k2), fd, B);
  std::vector<double> y(fd, 0.5);
  solve_block(p, A, &B, y);
  BreakResult out{term_value(A, y, p) + term_value(B, y, p), canonical_point(c, {*face, y}, 1e-15)};
  return out;
}

DistanceResult distance(const CubeComplex& c, const PointLocation& a, const PointLocation& b, double p) {
  return GeodesicSolver(c, p).distance(a, b);
}

}  // namespace cubik
