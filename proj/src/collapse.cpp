#include "cubik/collapse.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cubik/median.hpp"

namespace cubik {

namespace {

bool is_face_set(std::span<const VertexId> corners, std::span<const VertexId> subset) {
  unsigned all_and = ~0u, all_or = 0;
  for (VertexId v : subset) {
    auto it = std::find(corners.begin(), corners.end(), v);
    if (it == corners.end()) return false;
    unsigned idx = static_cast<unsigned>(it - corners.begin());
    all_and &= idx;
    all_or |= idx;
  }
  return subset.size() == (std::size_t{1} << __builtin_popcount(all_and ^ all_or));
}

void check_cuboid(const CubeComplex& c, const std::vector<VertexId>& cuboid, std::size_t index) {
  const Graph& g = c.graph();
  const std::string label = "cuboid " + std::to_string(index);
  if (cuboid.empty()) throw Error(ErrorCode::kNotACuboid, label + " is empty");
  std::vector<char> in(g.num_vertices(), 0);
  for (VertexId v : cuboid) {
    if (!g.contains(v)) throw Error(ErrorCode::kUnknownVertex, label + " names vertex " + std::to_string(v));
    if (in[v]) throw Error(ErrorCode::kOverlap, label + " repeats vertex " + std::to_string(v));
    in[v] = 1;
  }
  std::vector<VertexId> stack{cuboid[0]};
  std::vector<char> seen(g.num_vertices(), 0);
  seen[cuboid[0]] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++reached;
    for (VertexId w : g.neighbors(v)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (reached != cuboid.size()) throw Error(ErrorCode::kNotACuboid, label + " is not connected");
  std::vector<CubeId> touched;
  for (VertexId v : cuboid) {
    for (CubeId q : c.maximal_cubes_at(v)) touched.push_back(q);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (CubeId q : touched) {
    std::vector<VertexId> meet;
    for (VertexId v : c.cube(q).corners) {
      if (in[v]) meet.push_back(v);
    }
    if (!is_face_set(c.cube(q).corners, meet)) {
      throw Error(ErrorCode::kNotACuboid, label + " meets cube " + std::to_string(q) + " in a non-face");
    }
  }
}

ExpandedComplex replay(const Decomposition& d, int& step_index) {
  std::vector<std::vector<VertexId>> none;
  ExpandedComplex out{CubeComplex::build(1, none), {d.base_vertex}};
  std::map<VertexId, VertexId> dense{{d.base_vertex, 0}};
  step_index = 0;
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it, ++step_index) {
    const CollapseStep& step = *it;
    std::vector<std::vector<VertexId>> cuboids;
    std::size_t expected = 0;
    for (const auto& l : step.cuboids) {
      std::vector<VertexId> local;
      for (VertexId v : l) {
        auto f = dense.find(v);
        if (f == dense.end()) throw Error(ErrorCode::kUnknownVertex, "cuboid names vertex " + std::to_string(v) + " not yet present");
        local.push_back(f->second);
      }
      std::sort(local.begin(), local.end());
      expected += local.size();
      cuboids.push_back(std::move(local));
    }
    if (step.new_vertices.size() != expected) {
      throw Error(ErrorCode::kBadInput, "step lists " + std::to_string(step.new_vertices.size()) + " new vertices, expected " +
                                            std::to_string(expected));
    }
    Expansion e = expand_step(out.complex, cuboids);
    out.original.resize(e.complex.num_vertices(), -1);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < cuboids.size(); ++i) {
      const std::size_t size = cuboids[i].size();
      for (std::size_t j = 0; j < size; ++j) {
        const VertexId old_id = out.original[cuboids[i][j]];
        VertexId new_id = -1;
        for (std::size_t k = offset; k < offset + size; ++k) {
          if (step.new_vertices[k].first == old_id) new_id = step.new_vertices[k].second;
        }
        if (new_id < 0) throw Error(ErrorCode::kBadInput, "no new vertex recorded over " + std::to_string(old_id));
        if (!dense.emplace(new_id, e.fresh[i][j]).second) {
          throw Error(ErrorCode::kOverlap, "vertex " + std::to_string(new_id) + " introduced twice");
        }
        out.original[e.fresh[i][j]] = new_id;
      }
      offset += size;
    }
    out.complex = std::move(e.complex);
  }
  return out;
}

}  // namespace

Multicollapse multicollapse_round(const CubeComplex& c, std::span<const int> hyperplanes) {
  return multicollapse_round(c, HyperplaneStructure(c), hyperplanes);
}

Multicollapse multicollapse_round(const CubeComplex& c, const HyperplaneStructure& s,
                                  std::span<const int> hyperplanes) {
  std::map<int, int> minimal_side;
  for (const auto& e : extremal_hyperplanes(s)) minimal_side[e.hyperplane] = e.side;
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    if (!minimal_side.count(hyperplanes[i])) {
      throw Error(ErrorCode::kNotExtremal, "hyperplane " + std::to_string(hyperplanes[i]) + " is not extremal");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (hyperplanes[i] == hyperplanes[j] || s.crossing().adjacent(hyperplanes[i], hyperplanes[j])) {
        throw Error(ErrorCode::kNotDisjoint, "hyperplanes " + std::to_string(hyperplanes[j]) + " and " +
                                                 std::to_string(hyperplanes[i]) + " intersect");
      }
    }
  }
  const int n = c.num_vertices();
  std::vector<char> removed(n, 0);
  Multicollapse out{c, {}, {}};
  for (int h : hyperplanes) {
    const auto& side = s.halfspace(h, minimal_side[h]).vertices;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId v : side) {
      if (removed[v]) throw Error(ErrorCode::kNotDisjoint, "minimal halfspaces overlap");
      removed[v] = 1;
      VertexId gate = -1;
      for (VertexId w : c.graph().neighbors(v)) {
        if (s.hyperplane_of(v, w) == h) {
          if (gate >= 0) throw Error(ErrorCode::kNotCollapsible, "vertex with two edges dual to one hyperplane");
          gate = w;
        }
      }
      if (gate < 0) throw Error(ErrorCode::kNotCollapsible, "minimal halfspace is not a prism over its projection");
      pairs.emplace_back(gate, v);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<VertexId> cuboid;
    for (const auto& p : pairs) cuboid.push_back(p.first);
    out.step.cuboids.push_back(std::move(cuboid));
    out.step.new_vertices.insert(out.step.new_vertices.end(), pairs.begin(), pairs.end());
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!removed[v]) out.kept.push_back(v);
  }
  for (const auto& l : out.step.cuboids) {
    for (VertexId v : l) {
      if (removed[v]) throw Error(ErrorCode::kNotDisjoint, "projection meets a removed halfspace");
    }
  }
  out.reduced = induced_subcomplex(c, out.kept);
  return out;
}

Decomposition collapse_all(const CubeComplex& c) {
  {
    auto v = is_cat0(c);
    if (!v.cat0) throw Error(ErrorCode::kNotCat0, v.reason);
  }
  Decomposition d;
  std::vector<VertexId> keep(c.num_vertices());
  for (VertexId v = 0; v < c.num_vertices(); ++v) keep[v] = v;

  auto to_original = [&](CollapseStep step, const std::vector<VertexId>& ids) {
    for (auto& l : step.cuboids) {
      for (VertexId& v : l) v = ids[v];
    }
    for (auto& [a, b] : step.new_vertices) {
      a = ids[a];
      b = ids[b];
    }
    return step;
  };

  while (keep.size() > 1) {
    CubeComplex sweep_complex = induced_subcomplex(c, keep);
    HyperplaneStructure sweep(sweep_complex, false);
    auto extremal = extremal_hyperplanes(sweep);
    Coloring colors = color_greedy(sweep.crossing());
    const std::vector<VertexId> sweep_keep = keep;

    for (int color = 1; color <= colors.num_colors && keep.size() > 1; ++color) {
      std::vector<int> chosen;  // hyperplane ids of the sweep structure
      for (const auto& e : extremal) {
        if (colors.color[e.hyperplane] == color) chosen.push_back(e.hyperplane);
      }
      if (chosen.empty()) continue;

      CubeComplex cur = induced_subcomplex(c, keep);
      HyperplaneStructure s(cur, false);
      std::map<int, int> still;
      for (const auto& e : extremal_hyperplanes(s)) still[e.hyperplane] = e.side;
      auto local = [&](VertexId original) -> VertexId {
        auto it = std::lower_bound(keep.begin(), keep.end(), original);
        return it != keep.end() && *it == original ? static_cast<VertexId>(it - keep.begin()) : -1;
      };
      std::vector<int> round;
      for (int h : chosen) {
        // follow the hyperplane through any dual edge that survived earlier rounds
        int mapped = -1;
        for (const Edge& de : sweep.hyperplane(h).dual_edges) {
          VertexId a = local(sweep_keep[de.u]), b = local(sweep_keep[de.v]);
          if (a >= 0 && b >= 0) {
            mapped = s.hyperplane_of(a, b);
            break;
          }
        }
        if (mapped >= 0 && still.count(mapped)) round.push_back(mapped);
      }
      std::sort(round.begin(), round.end());
      round.erase(std::unique(round.begin(), round.end()), round.end());
      if (round.empty()) continue;
      Multicollapse m = multicollapse_round(cur, s, round);
      d.steps.push_back(to_original(m.step, keep));
      std::vector<VertexId> next;
      for (VertexId v : m.kept) next.push_back(keep[v]);
      keep = std::move(next);
    }
  }
  d.base_vertex = keep.front();
  return d;
}

Expansion expand_step(const CubeComplex& c, std::span<const std::vector<VertexId>> cuboids) {
  const int n = c.num_vertices();
  Expansion out{c, {}};
  std::vector<std::vector<VertexId>> raw = c.maximal_corner_arrays();
  VertexId next = n;
  for (std::size_t i = 0; i < cuboids.size(); ++i) {
    std::vector<VertexId> l(cuboids[i].begin(), cuboids[i].end());
    check_cuboid(c, l, i);
    std::sort(l.begin(), l.end());
    std::vector<VertexId> prime(n, -1);
    std::vector<VertexId> fresh;
    for (VertexId v : l) {
      prime[v] = next;
      fresh.push_back(next++);
    }
    for (const Cube& q : c.cubes()) {
      bool inside = std::all_of(q.corners.begin(), q.corners.end(), [&](VertexId v) { return prime[v] >= 0; });
      if (!inside) continue;
      std::vector<VertexId> prism = q.corners;
      for (VertexId v : q.corners) prism.push_back(prime[v]);
      raw.push_back(std::move(prism));
    }
    out.fresh.push_back(std::move(fresh));
  }
  out.complex = CubeComplex::build(next, raw);
  return out;
}

ExpandedComplex expand_all(const Decomposition& d) {
  int step = 0;
  return replay(d, step);
}

DecompositionVerdict verify_decomposition(const CubeComplex& c, const Decomposition& d) {
  DecompositionVerdict out;
  int step = 0;
  try {
    ExpandedComplex e = replay(d, step);
    step = -1;
    if (e.complex.num_vertices() != c.num_vertices()) {
      throw Error(ErrorCode::kNotIsomorphic, "rebuilt complex has " + std::to_string(e.complex.num_vertices()) +
                                                 " vertices, expected " + std::to_string(c.num_vertices()));
    }
    for (VertexId v : e.original) {
      if (v < 0 || v >= c.num_vertices()) throw Error(ErrorCode::kNotIsomorphic, "recorded vertex " + std::to_string(v) + " not in complex");
    }
    std::vector<char> seen(c.num_vertices(), 0);
    for (VertexId v : e.original) {
      if (seen[v]) throw Error(ErrorCode::kNotIsomorphic, "recorded map is not injective");
      seen[v] = 1;
    }
    if (!(relabel_vertices(e.complex, e.original) == c)) {
      throw Error(ErrorCode::kNotIsomorphic, "rebuilt complex differs under the recorded map");
    }
  } catch (const Error& err) {
    out.valid = false;
    out.failure = err.code();
    out.step = step;
    out.message = err.what();
  }
  return out;
}

Coloring coloring_from_decomposition(const CubeComplex& c, const HyperplaneStructure& s, const Decomposition& d) {
  (void)c;
  Coloring out;
  out.color.assign(s.size(), 0);
  out.num_colors = static_cast<int>(d.steps.size());
  int index = 0;
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    ++index;
    for (const auto& [a, b] : it->new_vertices) {
      int h = s.hyperplane_of(a, b);
      if (h < 0) throw Error(ErrorCode::kBadInput, "recorded edge is not an edge of the complex");
      if (out.color[h] != 0 && out.color[h] != index) {
        throw Error(ErrorCode::kBadInput, "hyperplane introduced by two steps");
      }
      out.color[h] = index;
    }
  }
  for (int col : out.color) {
    if (col == 0) throw Error(ErrorCode::kBadInput, "hyperplane not introduced by any step");
  }
  return out;
}

}  // namespace cubik
