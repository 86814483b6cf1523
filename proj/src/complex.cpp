#include "cubik/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "cubik/error.hpp"

namespace cubik {

namespace {

int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) return -1;
  return std::countr_zero(n);
}

// Scatters the low bits of `value` into the set bit positions of `mask`.
unsigned deposit(unsigned value, unsigned mask) {
  unsigned out = 0;
  for (unsigned bit = 1; mask != 0; bit <<= 1) {
    unsigned low = mask & (~mask + 1);
    if (value & bit) out |= low;
    mask &= mask - 1;
  }
  return out;
}

std::vector<VertexId> sorted_copy(std::span<const VertexId> v) {
  std::vector<VertexId> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Corner array (binary-word order over the free axes of `mask`) of one face.
std::vector<VertexId> face_corners(std::span<const VertexId> corners, unsigned free_mask, unsigned offset) {
  const int f = std::popcount(free_mask);
  std::vector<VertexId> out(std::size_t{1} << f);
  for (unsigned j = 0; j < out.size(); ++j) out[j] = corners[offset | deposit(j, free_mask)];
  return out;
}

template <typename Fn>
void for_each_face(int dim, Fn&& fn) {
  const unsigned full = (1u << dim) - 1;
  // free mask F, offset o with o & F == 0
  for (unsigned free_mask = 0;; free_mask = (free_mask - full) & full) {
    const unsigned pinned = full & ~free_mask;
    for (unsigned o = 0;; o = (o - pinned) & pinned) {
      fn(free_mask, o);
      if (o == pinned) break;
    }
    if (free_mask == full) break;
  }
}

bool cube_order(const Cube& a, const Cube& b) {
  if (a.dim != b.dim) return a.dim > b.dim;
  return a.corners < b.corners;
}

// True when `subset` (sorted) is the corner set of a face of `corners`.
bool is_face_set(std::span<const VertexId> corners, std::span<const VertexId> subset) {
  unsigned all_and = ~0u, all_or = 0;
  for (VertexId v : subset) {
    auto it = std::find(corners.begin(), corners.end(), v);
    if (it == corners.end()) return false;
    unsigned idx = static_cast<unsigned>(it - corners.begin());
    all_and &= idx;
    all_or |= idx;
  }
  const unsigned free_mask = all_and ^ all_or;
  return subset.size() == (std::size_t{1} << std::popcount(free_mask));
}

}  // namespace

std::vector<VertexId> canonicalize_corners(std::span<const VertexId> corners) {
  const int k = log2_exact(corners.size());
  if (k < 0) throw Error(ErrorCode::kNotAHypercube, "corner count is not a power of two");
  const unsigned m = static_cast<unsigned>(std::min_element(corners.begin(), corners.end()) - corners.begin());
  std::vector<int> axes(k);
  std::iota(axes.begin(), axes.end(), 0);
  std::sort(axes.begin(), axes.end(), [&](int a, int b) {
    return corners[m ^ (1u << a)] < corners[m ^ (1u << b)];
  });
  std::vector<VertexId> out(corners.size());
  for (unsigned i = 0; i < out.size(); ++i) {
    unsigned src = m;
    for (int b = 0; b < k; ++b) {
      if (i & (1u << b)) src ^= 1u << axes[b];
    }
    out[i] = corners[src];
  }
  return out;
}

std::vector<double> FaceEmbedding::to_cube(std::span<const double> face_coords) const {
  std::vector<double> out(pinned.size());
  for (std::size_t l = 0; l < pinned.size(); ++l) {
    if (pinned[l] >= 0) out[l] = pinned[l];
  }
  for (std::size_t a = 0; a < axis.size(); ++a) {
    out[axis[a]] = flip[a] ? 1.0 - face_coords[a] : face_coords[a];
  }
  return out;
}

std::vector<double> FaceEmbedding::to_face(std::span<const double> cube_coords) const {
  std::vector<double> out(axis.size());
  for (std::size_t a = 0; a < axis.size(); ++a) {
    double x = cube_coords[axis[a]];
    out[a] = flip[a] ? 1.0 - x : x;
  }
  return out;
}

CubeComplex CubeComplex::build(int num_vertices, std::span<const std::vector<VertexId>> raw_cubes) {
  std::vector<VertexId> vertices(num_vertices);
  std::iota(vertices.begin(), vertices.end(), 0);
  return build(vertices, raw_cubes);
}

CubeComplex CubeComplex::build(std::span<const VertexId> vertices,
                               std::span<const std::vector<VertexId>> raw_cubes) {
  const int n = static_cast<int>(vertices.size());
  {
    auto sorted = sorted_copy(vertices);
    for (int i = 0; i < n; ++i) {
      if (sorted[i] != i) throw Error(ErrorCode::kBadInput, "vertex ids must be exactly 0..n-1");
    }
  }
  if (n == 0) throw Error(ErrorCode::kBadInput, "complex needs at least one vertex");

  // sorted corner set -> canonical corner array, over every face of every raw cube
  std::map<std::vector<VertexId>, std::vector<VertexId>> faces;
  std::vector<std::vector<VertexId>> canon_raw;
  for (const auto& raw : raw_cubes) {
    const int k = log2_exact(raw.size());
    if (k < 0) throw Error(ErrorCode::kNotAHypercube, "corner count " + std::to_string(raw.size()) + " is not a power of two");
    if (k > kMaxDimension) throw Error(ErrorCode::kDimensionTooLarge, "cube of dimension " + std::to_string(k));
    for (VertexId v : raw) {
      if (v < 0 || v >= n) throw Error(ErrorCode::kDanglingVertex, "corner " + std::to_string(v) + " is not a declared vertex");
    }
    auto key = sorted_copy(raw);
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
      throw Error(ErrorCode::kNotAHypercube, "repeated corner in cube");
    }
    auto canon = canonicalize_corners(raw);
    for_each_face(k, [&](unsigned free_mask, unsigned offset) {
      auto fc = canonicalize_corners(face_corners(canon, free_mask, offset));
      auto fkey = sorted_copy(fc);
      auto [it, inserted] = faces.emplace(std::move(fkey), fc);
      if (!inserted && it->second != fc) {
        throw Error(ErrorCode::kBadGluing, "two cubes on the same corner set with different structure");
      }
    });
    canon_raw.push_back(std::move(canon));
  }
  for (VertexId v = 0; v < n; ++v) faces.emplace(std::vector<VertexId>{v}, std::vector<VertexId>{v});

  // gluing: pairwise intersections of raw cubes are common faces
  std::vector<std::vector<int>> raw_at(n);
  for (std::size_t i = 0; i < canon_raw.size(); ++i) {
    for (VertexId v : canon_raw[i]) raw_at[v].push_back(static_cast<int>(i));
  }
  std::vector<int> last_checked(canon_raw.size(), -1);
  for (std::size_t i = 0; i < canon_raw.size(); ++i) {
    auto si = sorted_copy(canon_raw[i]);
    for (VertexId v : canon_raw[i]) {
      for (int j : raw_at[v]) {
        if (j <= static_cast<int>(i) || last_checked[j] == static_cast<int>(i)) continue;
        last_checked[j] = static_cast<int>(i);
        auto sj = sorted_copy(canon_raw[j]);
        std::vector<VertexId> common;
        std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(), std::back_inserter(common));
        if (!is_face_set(canon_raw[i], common) || !is_face_set(canon_raw[j], common)) {
          throw Error(ErrorCode::kBadGluing, "cubes " + std::to_string(i) + " and " + std::to_string(j) +
                                                 " intersect in a non-face");
        }
      }
    }
  }

  std::vector<Edge> edges;
  for (const auto& [key, canon] : faces) {
    if (key.size() == 2) edges.push_back({key[0], key[1]});
  }
  Graph graph = Graph::from_edges(n, edges);

  // each cube must be an induced hypercube of the 1-skeleton
  for (const auto& [key, canon] : faces) {
    if (key.size() < 4) continue;
    const int k = log2_exact(key.size());
    std::size_t induced = 0;
    for (VertexId v : key) {
      for (VertexId w : graph.neighbors(v)) {
        if (w > v && std::binary_search(key.begin(), key.end(), w)) ++induced;
      }
    }
    if (induced != static_cast<std::size_t>(k) * (key.size() / 2)) {
      throw Error(ErrorCode::kNotAHypercube, "corner set does not induce a hypercube");
    }
  }
  if (n > 1) {
    for (VertexId v = 0; v < n; ++v) {
      if (graph.degree(v) == 0) throw Error(ErrorCode::kDanglingVertex, "vertex " + std::to_string(v) + " lies in no cube");
    }
  }

  std::vector<Cube> cubes;
  cubes.reserve(faces.size());
  for (auto& [key, canon] : faces) cubes.push_back({log2_exact(canon.size()), std::move(canon)});
  return from_closed(n, std::move(cubes));
}

CubeComplex CubeComplex::from_closed(int num_vertices, std::vector<Cube> cubes) {
  CubeComplex c;
  std::vector<Edge> edges;
  for (const Cube& q : cubes) {
    if (q.dim == 1) edges.push_back({std::min(q.corners[0], q.corners[1]), std::max(q.corners[0], q.corners[1])});
  }
  std::sort(edges.begin(), edges.end());
  c.graph_ = Graph::from_edges(num_vertices, edges);
  c.cubes_ = std::move(cubes);
  c.index();
  return c;
}

void CubeComplex::index() {
  std::sort(cubes_.begin(), cubes_.end(), cube_order);
  const int n = graph_.num_vertices();
  dimension_ = cubes_.empty() ? 0 : cubes_.front().dim;
  by_corner_set_.clear();
  incidence_.assign(n, {});
  maximal_incidence_.assign(n, {});
  vertex_cube_.assign(n, -1);
  is_maximal_.assign(cubes_.size(), true);
  for (CubeId id = 0; id < static_cast<CubeId>(cubes_.size()); ++id) {
    const Cube& q = cubes_[id];
    by_corner_set_.emplace(sorted_copy(q.corners), id);
    for (VertexId v : q.corners) incidence_[v].push_back(id);
    if (q.dim == 0) vertex_cube_[q.corners[0]] = id;
  }
  for (const Cube& q : cubes_) {
    for (int l = 0; l < q.dim; ++l) {
      for (unsigned side = 0; side < 2; ++side) {
        const unsigned free_mask = ((1u << q.dim) - 1) & ~(1u << l);
        auto fc = face_corners(q.corners, free_mask, side << l);
        is_maximal_[by_corner_set_.at(sorted_copy(fc))] = false;
      }
    }
  }
  maximal_.clear();
  for (CubeId id = 0; id < static_cast<CubeId>(cubes_.size()); ++id) {
    if (!is_maximal_[id]) continue;
    maximal_.push_back(id);
    for (VertexId v : cubes_[id].corners) maximal_incidence_[v].push_back(id);
  }
}

std::optional<CubeId> CubeComplex::find_cube(std::span<const VertexId> corner_set) const {
  auto it = by_corner_set_.find(sorted_copy(corner_set));
  if (it == by_corner_set_.end()) return std::nullopt;
  return it->second;
}

std::optional<CubeId> CubeComplex::edge_cube(VertexId u, VertexId v) const {
  VertexId pair[2] = {u, v};
  return find_cube(pair);
}

int CubeComplex::corner_index(CubeId cube, VertexId v) const {
  const auto& cs = cubes_[cube].corners;
  auto it = std::find(cs.begin(), cs.end(), v);
  return it == cs.end() ? -1 : static_cast<int>(it - cs.begin());
}

bool CubeComplex::contains(CubeId cube, CubeId face) const {
  if (cubes_[face].dim > cubes_[cube].dim) return false;
  for (VertexId v : cubes_[face].corners) {
    if (corner_index(cube, v) < 0) return false;
  }
  return true;
}

FaceEmbedding CubeComplex::embedding(CubeId face, CubeId cube) const {
  const Cube& f = cubes_[face];
  const Cube& q = cubes_[cube];
  FaceEmbedding e;
  const int c0 = corner_index(cube, f.corners[0]);
  if (c0 < 0) throw Error(ErrorCode::kBadInput, "cube " + std::to_string(face) + " is not a face of " + std::to_string(cube));
  e.axis.resize(f.dim);
  e.flip.resize(f.dim);
  e.pinned.assign(q.dim, -1);
  unsigned free_mask = 0;
  for (int a = 0; a < f.dim; ++a) {
    const int c1 = corner_index(cube, f.corners[std::size_t{1} << a]);
    if (c1 < 0) throw Error(ErrorCode::kBadInput, "cube " + std::to_string(face) + " is not a face of " + std::to_string(cube));
    const int l = std::countr_zero(static_cast<unsigned>(c0 ^ c1));
    e.axis[a] = l;
    e.flip[a] = ((c0 >> l) & 1) != 0;
    free_mask |= 1u << l;
  }
  for (int l = 0; l < q.dim; ++l) {
    if (!(free_mask & (1u << l))) e.pinned[l] = (c0 >> l) & 1;
  }
  return e;
}

std::vector<CubeId> CubeComplex::maximal_cofaces(CubeId face) const {
  std::vector<CubeId> out;
  for (CubeId m : maximal_incidence_[cubes_[face].corners[0]]) {
    if (contains(m, face)) out.push_back(m);
  }
  return out;
}

std::vector<std::vector<VertexId>> CubeComplex::maximal_corner_arrays() const {
  std::vector<std::vector<VertexId>> out;
  out.reserve(maximal_.size());
  for (CubeId id : maximal_) {
    if (cubes_[id].dim > 0 || num_vertices() == 1) out.push_back(cubes_[id].corners);
  }
  return out;
}

std::vector<std::vector<VertexId>> induced_hypercubes(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<Cube> found;
  for (VertexId v = 0; v < n; ++v) found.push_back({0, {v}});
  std::vector<std::vector<VertexId>> layer;
  for (const Edge& e : g.edges()) layer.push_back({e.u, e.v});
  for (const auto& q : layer) found.push_back({1, q});

  // grow (k-1)-cubes into k-cubes by matching a translate along a new axis
  for (int k = 2; !layer.empty() && k <= kMaxDimension; ++k) {
    std::set<std::vector<VertexId>> next;
    for (const auto& q : layer) {
      const std::size_t half = q.size();
      std::unordered_set<VertexId> in_q(q.begin(), q.end());
      std::vector<VertexId> translate(half, -1);
      std::unordered_set<VertexId> used;
      auto extend = [&](auto&& self, std::size_t i) -> void {
        if (i == half) {
          std::vector<VertexId> corners(q.begin(), q.end());
          corners.insert(corners.end(), translate.begin(), translate.end());
          auto sorted = sorted_copy(corners);
          std::size_t induced = 0;
          for (VertexId v : sorted) {
            for (VertexId w : g.neighbors(v)) {
              if (w > v && std::binary_search(sorted.begin(), sorted.end(), w)) ++induced;
            }
          }
          if (induced == static_cast<std::size_t>(k) * half) next.insert(canonicalize_corners(corners));
          return;
        }
        for (VertexId cand : g.neighbors(q[i])) {
          if (in_q.count(cand) || used.count(cand)) continue;
          bool ok = true;
          for (std::size_t b = 1; b < half && ok; b <<= 1) {
            if ((i & b) && !g.adjacent(cand, translate[i ^ b])) ok = false;
          }
          if (!ok) continue;
          translate[i] = cand;
          used.insert(cand);
          self(self, i + 1);
          used.erase(cand);
        }
      };
      extend(extend, 0);
    }
    layer.assign(next.begin(), next.end());
    for (const auto& q : layer) found.push_back({k, q});
  }

  std::sort(found.begin(), found.end(), cube_order);
  std::vector<std::vector<VertexId>> out;
  out.reserve(found.size());
  for (auto& q : found) out.push_back(std::move(q.corners));
  return out;
}

CubeComplex completion_from_graph(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<VertexId>> raw;
  for (auto& q : induced_hypercubes(g)) {
    if (q.size() > 1 || n == 1) raw.push_back(std::move(q));
  }
  return CubeComplex::build(n, raw);
}

CubeComplex induced_subcomplex(const CubeComplex& c, std::span<const VertexId> keep) {
  std::vector<int> index(c.num_vertices(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Cube> cubes;
  for (const Cube& q : c.cubes()) {
    bool inside = std::all_of(q.corners.begin(), q.corners.end(), [&](VertexId v) { return index[v] >= 0; });
    if (!inside) continue;
    Cube r{q.dim, {}};
    r.corners.reserve(q.corners.size());
    for (VertexId v : q.corners) r.corners.push_back(index[v]);
    cubes.push_back(std::move(r));
  }
  return CubeComplex::from_closed(static_cast<int>(keep.size()), std::move(cubes));
}

CubeComplex relabel_vertices(const CubeComplex& c, std::span<const VertexId> perm) {
  const int n = c.num_vertices();
  std::vector<char> hit(n, 0);
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorCode::kBadInput, "relabeling has wrong size");
  for (VertexId v : perm) {
    if (v < 0 || v >= n || hit[v]) throw Error(ErrorCode::kBadInput, "relabeling is not a permutation");
    hit[v] = 1;
  }
  std::vector<Cube> cubes;
  cubes.reserve(c.num_cubes());
  for (const Cube& q : c.cubes()) {
    std::vector<VertexId> corners;
    corners.reserve(q.corners.size());
    for (VertexId v : q.corners) corners.push_back(perm[v]);
    cubes.push_back({q.dim, canonicalize_corners(corners)});
  }
  return CubeComplex::from_closed(n, std::move(cubes));
}

PointLocation canonical_point(const CubeComplex& c, const PointLocation& p, double snap) {
  if (p.cube < 0 || p.cube >= static_cast<CubeId>(c.num_cubes())) {
    throw Error(ErrorCode::kOutOfRange, "unknown cube " + std::to_string(p.cube));
  }
  const Cube& q = c.cube(p.cube);
  if (static_cast<int>(p.coords.size()) != q.dim) {
    throw Error(ErrorCode::kOutOfRange, "cube " + std::to_string(p.cube) + " has dimension " + std::to_string(q.dim));
  }
  std::vector<double> x = p.coords;
  unsigned free_mask = 0, offset = 0;
  for (int l = 0; l < q.dim; ++l) {
    if (!(x[l] >= 0.0 && x[l] <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "coordinate " + std::to_string(x[l]) + " outside [0,1]");
    }
    if (x[l] <= snap) x[l] = 0.0;
    if (x[l] >= 1.0 - snap) x[l] = 1.0;
    if (x[l] == 1.0) offset |= 1u << l;
    if (x[l] > 0.0 && x[l] < 1.0) free_mask |= 1u << l;
  }
  if (free_mask == (1u << q.dim) - 1) return {p.cube, x};
  auto fc = face_corners(q.corners, free_mask, offset);
  CubeId face = *c.find_cube(fc);
  return {face, c.embedding(face, p.cube).to_face(x)};
}

std::vector<double> coords_in(const CubeComplex& c, const PointLocation& p, CubeId cube) {
  if (p.cube == cube) return p.coords;
  return c.embedding(p.cube, cube).to_cube(p.coords);
}

std::vector<std::vector<CubeAdjacency>> cube_adjacency(const CubeComplex& c) {
  std::vector<std::vector<CubeAdjacency>> out(c.num_cubes());
  for (CubeId m : c.maximal_cubes()) {
    std::vector<CubeId> others;
    for (VertexId v : c.cube(m).corners) {
      for (CubeId o : c.maximal_cubes_at(v)) {
        if (o != m) others.push_back(o);
      }
    }
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    auto mine = sorted_copy(c.cube(m).corners);
    for (CubeId o : others) {
      auto theirs = sorted_copy(c.cube(o).corners);
      std::vector<VertexId> common;
      std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(common));
      out[m].push_back({o, *c.find_cube(common)});
    }
  }
  return out;
}

}  // namespace cubik
