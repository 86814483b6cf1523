#include "cubik/median.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

#include "cubik/error.hpp"

namespace cubik {

namespace {

void require_vertex(const Graph& g, VertexId v) {
  if (!g.contains(v)) throw Error(ErrorCode::kUnknownVertex, "vertex " + std::to_string(v));
}

// Row-major n*n table of interval bitsets.
class IntervalTable {
 public:
  explicit IntervalTable(const DistanceMatrix& d) : n_(d.size()), words_((n_ + 63) / 64) {
    bits_.assign(static_cast<std::size_t>(n_) * n_ * words_, 0);
    for (int x = 0; x < n_; ++x) {
      for (int y = x; y < n_; ++y) {
        std::uint64_t* row = at(x, y);
        for (int z = 0; z < n_; ++z) {
          if (d(x, z) + d(z, y) == d(x, y)) row[z / 64] |= std::uint64_t{1} << (z % 64);
        }
        std::copy(row, row + words_, at(y, x));
      }
    }
  }

  std::uint64_t* at(int x, int y) { return bits_.data() + (static_cast<std::size_t>(x) * n_ + y) * words_; }
  const std::uint64_t* at(int x, int y) const {
    return bits_.data() + (static_cast<std::size_t>(x) * n_ + y) * words_;
  }
  int words() const { return words_; }

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

std::vector<VertexId> common_neighbors(const Graph& g, VertexId a, VertexId b) {
  std::vector<VertexId> out;
  std::set_intersection(g.neighbors(a).begin(), g.neighbors(a).end(), g.neighbors(b).begin(),
                        g.neighbors(b).end(), std::back_inserter(out));
  return out;
}

bool set_connected(const Graph& g, std::span<const VertexId> s) {
  if (s.empty()) return false;
  std::vector<char> in(g.num_vertices(), 0), seen(g.num_vertices(), 0);
  for (VertexId v : s) in[v] = 1;
  std::vector<VertexId> stack{s[0]};
  seen[s[0]] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++count;
    for (VertexId w : g.neighbors(v)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::size_t distinct = std::count(in.begin(), in.end(), 1);
  return count == distinct;
}

}  // namespace

std::vector<VertexId> interval(const Graph& g, VertexId u, VertexId v) {
  require_vertex(g, u);
  require_vertex(g, v);
  auto du = g.bfs(u), dv = g.bfs(v);
  std::vector<VertexId> out;
  if (du[v] < 0) return out;
  for (VertexId z = 0; z < g.num_vertices(); ++z) {
    if (du[z] >= 0 && dv[z] >= 0 && du[z] + dv[z] == du[v]) out.push_back(z);
  }
  return out;
}

MedianResult median_point(const Graph& g, VertexId x, VertexId y, VertexId z) {
  auto a = interval(g, x, y), b = interval(g, y, z), c = interval(g, z, x);
  std::vector<VertexId> ab, abc;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ab));
  std::set_intersection(ab.begin(), ab.end(), c.begin(), c.end(), std::back_inserter(abc));
  MedianResult r;
  r.intersection = abc;
  if (abc.size() == 1) {
    r.median = abc[0];
  } else {
    r.kind = abc.empty() ? MedianResult::Kind::kNoMedian : MedianResult::Kind::kMultipleMedians;
  }
  return r;
}

MedianVerdict is_median(const Graph& g) {
  MedianVerdict out;
  const int n = g.num_vertices();
  out.connected = g.connected();
  if (!out.connected) {
    out.median = false;
    return out;
  }

  for (const Edge& e : g.edges()) {
    auto cn = common_neighbors(g, e.u, e.v);
    if (!cn.empty()) {
      out.triangle_free = false;
      out.triangle = {e.u, e.v, cn[0]};
      break;
    }
  }

  for (VertexId a = 0; a < n && out.k23_free; ++a) {
    std::vector<int> count(n, 0);
    for (VertexId c : g.neighbors(a)) {
      for (VertexId b : g.neighbors(c)) {
        if (b > a && ++count[b] == 3) {
          auto cn = common_neighbors(g, a, b);
          out.k23_free = false;
          out.k23 = {a, b, cn[0], cn[1], cn[2]};
          break;
        }
      }
      if (!out.k23_free) break;
    }
  }

  // quadrangle: d(v,z) = d(w,z) = 1, 1 <= d(u,v) = d(u,w) = d(u,z) - 1
  for (VertexId u = 0; u < n && out.quadrangle; ++u) {
    auto du = g.bfs(u);
    for (VertexId z = 0; z < n && out.quadrangle; ++z) {
      const auto& nz = g.neighbors(z);
      for (std::size_t i = 0; i < nz.size() && out.quadrangle; ++i) {
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
          VertexId v = nz[i], w = nz[j];
          if (du[v] < 1 || du[v] != du[w] || du[z] != du[v] + 1) continue;
          bool found = false;
          for (VertexId x : common_neighbors(g, v, w)) {
            if (du[x] == du[v] - 1) {
              found = true;
              break;
            }
          }
          if (!found) {
            out.quadrangle = false;
            out.quadrangle_witness = {u, v, w, z};
            break;
          }
        }
      }
    }
  }

  const bool characterized = out.triangle_free && out.quadrangle && out.k23_free;
  if (n > kDirectMedianLimit) {
    out.median = characterized;
    return out;
  }

  out.direct = true;
  DistanceMatrix d(g);
  IntervalTable table(d);
  const int words = table.words();
  std::vector<std::uint64_t> acc(words);
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y = x + 1; y < n; ++y) {
      const std::uint64_t* ixy = table.at(x, y);
      for (VertexId z = y + 1; z < n; ++z) {
        const std::uint64_t* iyz = table.at(y, z);
        const std::uint64_t* izx = table.at(z, x);
        int pop = 0;
        for (int w = 0; w < words; ++w) {
          acc[w] = ixy[w] & iyz[w] & izx[w];
          pop += __builtin_popcountll(acc[w]);
        }
        if (pop != 1) {
          out.median = false;
          out.bad_triple = std::array<VertexId, 3>{x, y, z};
          out.bad_median = median_point(g, x, y, z);
          return out;
        }
      }
    }
  }
  out.median = true;
  return out;
}

bool quadrangle_condition_bruteforce(const Graph& g) {
  const int n = g.num_vertices();
  DistanceMatrix d(g);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId w = 0; w < n; ++w) {
        for (VertexId z = 0; z < n; ++z) {
          if (d(v, z) != 1 || d(w, z) != 1) continue;
          if (!(1 <= d(u, v) && d(u, v) == d(u, w) && d(u, w) == d(u, z) - 1)) continue;
          bool found = false;
          for (VertexId x = 0; x < n && !found; ++x) {
            found = d(x, v) == 1 && d(x, w) == 1 && d(u, x) == d(u, v) - 1;
          }
          if (!found) return false;
        }
      }
    }
  }
  return true;
}

bool is_two_convex(const Graph& g, std::span<const VertexId> s) {
  const int n = g.num_vertices();
  std::vector<char> in(n, 0);
  for (VertexId v : s) in[v] = 1;
  // x, y ∈ s at distance 2: every common neighbor must lie in s
  for (VertexId a = 0; a < n; ++a) {
    if (in[a]) continue;
    std::vector<VertexId> inside;
    for (VertexId w : g.neighbors(a)) {
      if (in[w]) inside.push_back(w);
    }
    for (std::size_t i = 0; i < inside.size(); ++i) {
      for (std::size_t j = i + 1; j < inside.size(); ++j) {
        if (inside[i] != inside[j] && !g.adjacent(inside[i], inside[j])) return false;
      }
    }
  }
  return true;
}

bool is_convex(const Graph& g, std::span<const VertexId> s) {
  for (VertexId v : s) require_vertex(g, v);
  if (!is_median(g).median) throw Error(ErrorCode::kNotMedian, "graph is not median");
  if (!set_connected(g, s)) throw Error(ErrorCode::kNotConnected, "vertex set is not connected");
  return is_two_convex(g, s);
}

bool is_convex_bruteforce(const Graph& g, std::span<const VertexId> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (VertexId v : s) in[v] = 1;
  DistanceMatrix d(g);
  for (VertexId x : s) {
    for (VertexId y : s) {
      for (VertexId z = 0; z < g.num_vertices(); ++z) {
        if (!in[z] && d(x, z) + d(z, y) == d(x, y)) return false;
      }
    }
  }
  return true;
}

GateMap gate_map(const Graph& g, std::span<const VertexId> a) {
  if (!is_convex(g, a)) throw Error(ErrorCode::kNotConvex, "target set is not convex");
  GateMap out;
  out.target.assign(a.begin(), a.end());
  std::sort(out.target.begin(), out.target.end());
  out.target.erase(std::unique(out.target.begin(), out.target.end()), out.target.end());
  DistanceMatrix d(g);
  out.gate.resize(g.num_vertices());
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    VertexId best = out.target[0];
    for (VertexId t : out.target) {
      if (d(x, t) < d(x, best)) best = t;
    }
    out.gate[x] = best;
  }
  return out;
}

LinkVerdict link_condition_check(const CubeComplex& c) {
  LinkVerdict out;
  auto corner_set = [&](CubeId id) {
    std::vector<VertexId> s = c.cube(id).corners;
    std::sort(s.begin(), s.end());
    return s;
  };
  auto meet = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    std::vector<VertexId> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  };
  for (CubeId q = static_cast<CubeId>(c.num_cubes()) - 1; q >= 0; --q) {
    const int k = c.cube(q).dim;
    if (k + 2 > c.dimension()) continue;
    std::vector<CubeId> up;
    for (CubeId id : c.cubes_at(c.cube(q).corners[0])) {
      if (c.cube(id).dim == k + 2 && c.contains(id, q)) up.push_back(id);
    }
    std::vector<std::vector<VertexId>> sets;
    for (CubeId id : up) sets.push_back(corner_set(id));
    const std::size_t facet = std::size_t{1} << (k + 1);
    const std::size_t base = std::size_t{1} << k;
    for (std::size_t i = 0; i < up.size(); ++i) {
      for (std::size_t j = i + 1; j < up.size(); ++j) {
        auto ij = meet(sets[i], sets[j]);
        if (ij.size() != facet) continue;
        for (std::size_t l = j + 1; l < up.size(); ++l) {
          if (meet(sets[i], sets[l]).size() != facet || meet(sets[j], sets[l]).size() != facet) continue;
          if (meet(ij, sets[l]).size() != base) continue;
          bool filled = false;
          for (CubeId id : c.cubes_at(c.cube(q).corners[0])) {
            if (c.cube(id).dim == k + 3 && c.contains(id, up[i]) && c.contains(id, up[j]) &&
                c.contains(id, up[l])) {
              filled = true;
              break;
            }
          }
          if (!filled) {
            out.ok = false;
            out.center = q;
            out.witness = {up[i], up[j], up[l]};
            return out;
          }
        }
      }
    }
  }
  return out;
}

Cat0Verdict is_cat0(const CubeComplex& c) {
  Cat0Verdict out;
  // cube sets compared directly: completing a non-median graph may not glue
  std::set<std::vector<VertexId>> mine;
  for (const Cube& q : c.cubes()) {
    auto s = q.corners;
    std::sort(s.begin(), s.end());
    mine.insert(std::move(s));
  }
  auto all = induced_hypercubes(c.graph());
  bool complete = all.size() == mine.size();
  for (std::size_t i = 0; complete && i < all.size(); ++i) {
    std::sort(all[i].begin(), all[i].end());
    complete = mine.count(all[i]) > 0;
  }
  if (!complete) {
    out.cat0 = false;
    out.reason = "missing cubes";
    return out;
  }
  if (!is_median(c.graph()).median) {
    out.cat0 = false;
    out.reason = "graph not median";
  }
  return out;
}

}  // namespace cubik
