#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <unordered_map>

#include "cubik/error.hpp"
#include "cubik/metric.hpp"

namespace cubik {

namespace {

int default_radius(double p, int dim) {
  if (p == 1.0 || std::isinf(p) || dim <= 1) return 1;
  if (dim == 2) return 4;
  if (dim == 3) return 3;
  return 1;
}

struct Offset {
  std::vector<int> delta;
  double weight;
};

}  // namespace

struct GridOracle::Impl {
  const CubeComplex& c;
  double p;
  int k;
  std::vector<CubeId> cubes;                     // maximal cubes
  std::vector<std::vector<int>> ids;             // per maximal cube: flat lattice index -> node
  std::vector<std::vector<std::pair<int, int>>> members;  // node -> (cube slot, flat index)
  std::vector<std::vector<Offset>> offsets;      // per cube slot
  int nodes = 0;

  Impl(const CubeComplex& cc, double pp, int kk, int radius) : c(cc), p(pp), k(kk) {
    if (k < 1) throw Error(ErrorCode::kBadParams, "lattice resolution must be >= 1");
    if (!(p >= 1.0)) throw Error(ErrorCode::kBadParams, "p must be >= 1");
    double total = 0.0;
    for (CubeId q : c.maximal_cubes()) total += std::pow(k + 1.0, c.cube(q).dim);
    if (total > 5e7) throw Error(ErrorCode::kTooLarge, "lattice too large");
    cubes.assign(c.maximal_cubes().begin(), c.maximal_cubes().end());
    std::map<std::vector<int>, int> boundary;
    for (std::size_t slot = 0; slot < cubes.size(); ++slot) {
      const CubeId q = cubes[slot];
      const Cube& cube = c.cube(q);
      const int d = cube.dim;
      std::size_t count = 1;
      for (int l = 0; l < d; ++l) count *= static_cast<std::size_t>(k + 1);
      ids.emplace_back(count, -1);
      std::map<std::pair<unsigned, unsigned>, std::pair<CubeId, FaceEmbedding>> faces;
      std::vector<int> z(d, 0);
      for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rest = flat;
        unsigned free_mask = 0, ones = 0;
        for (int l = 0; l < d; ++l) {
          z[l] = static_cast<int>(rest % (k + 1));
          rest /= (k + 1);
          if (z[l] > 0 && z[l] < k) free_mask |= 1u << l;
          else if (z[l] == k) ones |= 1u << l;
        }
        int id;
        if (free_mask == (1u << d) - 1) {
          id = nodes++;
          members.emplace_back();
        } else {
          auto key = std::make_pair(free_mask, ones);
          auto it = faces.find(key);
          if (it == faces.end()) {
            std::vector<VertexId> corners;
            for (unsigned i = 0; i < cube.corners.size(); ++i) {
              if ((i & ~free_mask) == ones) corners.push_back(cube.corners[i]);
            }
            CubeId f = *c.find_cube(corners);
            it = faces.emplace(key, std::make_pair(f, c.embedding(f, q))).first;
          }
          const auto& [f, e] = it->second;
          std::vector<int> fkey{f};
          for (std::size_t a = 0; a < e.axis.size(); ++a) {
            int v = z[e.axis[a]];
            fkey.push_back(e.flip[a] ? k - v : v);
          }
          auto [bit, fresh] = boundary.emplace(std::move(fkey), nodes);
          if (fresh) {
            ++nodes;
            members.emplace_back();
          }
          id = bit->second;
        }
        ids[slot][flat] = id;
        members[id].emplace_back(static_cast<int>(slot), static_cast<int>(flat));
      }
      // stencil
      const int r = radius > 0 ? radius : default_radius(p, d);
      std::vector<Offset> off;
      std::vector<int> o(d, -r);
      if (d > 0) {
        while (true) {
          if (std::any_of(o.begin(), o.end(), [](int x) { return x != 0; })) {
            std::vector<double> v(o.begin(), o.end());
            off.push_back({o, norm_p(v, p) / k});
          }
          int l = 0;
          while (l < d && o[l] == r) o[l++] = -r;
          if (l == d) break;
          ++o[l];
        }
      }
      offsets.push_back(std::move(off));
    }
  }

  // nodes near point x of cube slot, with exact distances
  void around(std::size_t slot, const std::vector<double>& x, int reach,
              const std::function<void(int, double)>& fn) const {
    const int d = static_cast<int>(x.size());
    std::vector<int> lo(d), hi(d), z(d);
    for (int l = 0; l < d; ++l) {
      int base = static_cast<int>(std::floor(x[l] * k));
      lo[l] = std::max(0, base - reach);
      hi[l] = std::min(k, base + 1 + reach);
      z[l] = lo[l];
    }
    std::vector<double> pt(d);
    while (true) {
      std::size_t flat = 0, mul = 1;
      for (int l = 0; l < d; ++l) {
        flat += z[l] * mul;
        mul *= (k + 1);
        pt[l] = static_cast<double>(z[l]) / k;
      }
      fn(ids[slot][flat], cube_distance(x, pt, p));
      int l = 0;
      while (l < d && z[l] == hi[l]) {
        z[l] = lo[l];
        ++l;
      }
      if (l == d) break;
      ++z[l];
    }
  }

  double query(const PointLocation& a0, const PointLocation& b0) const {
    PointLocation a = canonical_point(c, a0), b = canonical_point(c, b0);
    double best = kInfNorm;
    std::unordered_map<int, double> to_b;
    std::vector<double> dist(nodes, kInfNorm);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    const int reach = 4;
    for (std::size_t slot = 0; slot < cubes.size(); ++slot) {
      const CubeId q = cubes[slot];
      const bool ha = c.contains(q, a.cube), hb = c.contains(q, b.cube);
      if (ha && hb) best = std::min(best, cube_distance(coords_in(c, a, q), coords_in(c, b, q), p));
      if (ha) {
        around(slot, coords_in(c, a, q), reach, [&](int id, double w) {
          if (w < dist[id]) {
            dist[id] = w;
            open.emplace(w, id);
          }
        });
      }
      if (hb) {
        around(slot, coords_in(c, b, q), reach, [&](int id, double w) {
          auto [it, fresh] = to_b.emplace(id, w);
          if (!fresh) it->second = std::min(it->second, w);
        });
      }
    }
    std::vector<int> z;
    while (!open.empty()) {
      auto [du, u] = open.top();
      open.pop();
      if (du > dist[u]) continue;
      if (du >= best) break;
      if (auto it = to_b.find(u); it != to_b.end()) best = std::min(best, du + it->second);
      for (auto [slot, flat] : members[u]) {
        const int d = c.cube(cubes[slot]).dim;
        z.resize(d);
        int rest = flat;
        for (int l = 0; l < d; ++l) {
          z[l] = rest % (k + 1);
          rest /= (k + 1);
        }
        for (const Offset& o : offsets[slot]) {
          std::size_t target = 0, mul = 1;
          bool inside = true;
          for (int l = 0; l < d; ++l) {
            int v = z[l] + o.delta[l];
            if (v < 0 || v > k) {
              inside = false;
              break;
            }
            target += v * mul;
            mul *= (k + 1);
          }
          if (!inside) continue;
          int w = ids[slot][target];
          double nd = du + o.weight;
          if (nd < dist[w]) {
            dist[w] = nd;
            open.emplace(nd, w);
          }
        }
      }
    }
    if (std::isinf(best)) throw Error(ErrorCode::kUnreachable, "endpoints lie in different components");
    return best;
  }
};

GridOracle::GridOracle(const CubeComplex& c, double p, int k, int radius)
    : impl_(std::make_unique<Impl>(c, p, k, radius)) {}
GridOracle::~GridOracle() = default;

double GridOracle::distance(const PointLocation& a, const PointLocation& b) const { return impl_->query(a, b); }
int GridOracle::num_nodes() const { return impl_->nodes; }

double grid_oracle_distance(const CubeComplex& c, const PointLocation& a, const PointLocation& b, double p, int k,
                            int radius) {
  return GridOracle(c, p, k, radius).distance(a, b);
}

}  // namespace cubik
