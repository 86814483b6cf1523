#include "cubik/taut.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cubik/error.hpp"

namespace cubik {

namespace {

double seg(const CubeComplex& c, const PointLocation& x, const PointLocation& y, CubeId k, double p) {
  return cube_distance(coords_in(c, x, k), coords_in(c, y, k), p);
}

std::optional<CubeId> maximal_holding(const CubeComplex& c, std::span<const PointLocation> pts) {
  for (CubeId k : c.maximal_cofaces(pts[0].cube)) {
    bool all = std::all_of(pts.begin() + 1, pts.end(), [&](const PointLocation& q) { return c.contains(k, q.cube); });
    if (all) return k;
  }
  return std::nullopt;
}

// Running chart of one carrier: per cube axis, its label among 0..n-1,
// whether the chart coordinate is 1 - local, and whether the axis comes
// through the face shared with the previous carrier.
struct Chart {
  std::vector<int> label;
  std::vector<char> rev;
  std::vector<char> inherited;

  int axis_of(int l) const {
    auto it = std::find(label.begin(), label.end(), l);
    return it == label.end() ? -1 : static_cast<int>(it - label.begin());
  }
};

CubeId meet(const CubeComplex& c, CubeId a, CubeId b) {
  std::vector<VertexId> x = c.cube(a).corners, y = c.cube(b).corners, common;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
  auto f = common.empty() ? std::nullopt : c.find_cube(common);
  if (!f) throw Error(ErrorCode::kBrokenString, "consecutive carriers do not meet");
  return *f;
}

std::vector<Chart> build_charts(const CubeComplex& c, const MString& s, const std::vector<char>& root_rev) {
  const std::size_t m = s.carriers.size();
  std::vector<Chart> out(m);
  const int d0 = c.cube(s.carriers[0]).dim;
  for (int a = 0; a < d0; ++a) {
    out[0].label.push_back(a);
    out[0].rev.push_back(root_rev[a]);
    out[0].inherited.push_back(0);
  }
  for (std::size_t i = 1; i < m; ++i) {
    const CubeId prev = s.carriers[i - 1], cur = s.carriers[i];
    const int d = c.cube(cur).dim;
    Chart& ch = out[i];
    ch.label.assign(d, -1);
    ch.rev.assign(d, 0);
    ch.inherited.assign(d, 0);
    const CubeId f = meet(c, prev, cur);
    FaceEmbedding ep = c.embedding(f, prev), ec = c.embedding(f, cur);
    std::vector<char> used(std::max(1, c.dimension()) + d, 0);
    for (std::size_t a = 0; a < ep.axis.size(); ++a) {
      const int pa = ep.axis[a], ca = ec.axis[a];
      ch.label[ca] = out[i - 1].label[pa];
      ch.rev[ca] = static_cast<char>(out[i - 1].rev[pa] ^ ep.flip[a] ^ ec.flip[a]);
      ch.inherited[ca] = 1;
      used[ch.label[ca]] = 1;
    }
    int next = 0;
    for (int l = 0; l < d; ++l) {
      if (ch.label[l] >= 0) continue;
      while (used[next]) ++next;
      ch.label[l] = next;
      used[next] = 1;
      ch.rev[l] = static_cast<char>(ec.pinned[l] == 1);  // the shared face sits at 0
    }
  }
  return out;
}

double chart_coord(const Chart& ch, const std::vector<double>& local, int axis) {
  return ch.rev[axis] ? 1.0 - local[axis] : local[axis];
}

// Orients the axes of the first carrier so that each label chain starting
// there increases at its first strict change.
std::vector<Chart> oriented_charts(const CubeComplex& c, const MString& s, double tol) {
  const std::size_t m = s.carriers.size();
  std::vector<char> root(c.cube(s.carriers[0]).dim, 0);
  std::vector<Chart> ch = build_charts(c, s, root);
  for (std::size_t a = 0; a < root.size(); ++a) {
    int axis = static_cast<int>(a);
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0) {
        axis = ch[i].axis_of(static_cast<int>(a));
        if (axis < 0 || !ch[i].inherited[axis]) break;
      }
      const CubeId k = s.carriers[i];
      double from = chart_coord(ch[i], coords_in(c, s.points[i], k), axis);
      double to = chart_coord(ch[i], coords_in(c, s.points[i + 1], k), axis);
      if (std::abs(to - from) > tol) {
        if (to < from) root[a] = 1;
        break;
      }
    }
  }
  return build_charts(c, s, root);
}

struct Violation {
  std::size_t segment;
  int axis;
};

std::optional<Violation> first_decrease(const CubeComplex& c, const MString& s, const std::vector<Chart>& ch,
                                        double tol) {
  for (std::size_t i = 0; i < s.carriers.size(); ++i) {
    const CubeId k = s.carriers[i];
    auto x = coords_in(c, s.points[i], k), y = coords_in(c, s.points[i + 1], k);
    for (std::size_t a = 0; a < x.size(); ++a) {
      int ax = static_cast<int>(a);
      if (chart_coord(ch[i], y, ax) < chart_coord(ch[i], x, ax) - tol) return Violation{i, ax};
    }
  }
  return std::nullopt;
}

void set_chart_coord(const CubeComplex& c, MString& s, const std::vector<Chart>& ch, std::size_t i, int axis,
                     double value) {
  const CubeId k = s.carriers[i];
  auto x = coords_in(c, s.points[i], k);
  x[axis] = ch[i].rev[axis] ? 1.0 - value : value;
  s.points[i] = canonical_point(c, {k, x}, 1e-12);
}

// The tautening move for a decreasing coordinate on segment j.
void clamp_chain(const CubeComplex& c, MString& s, const std::vector<Chart>& ch, const Violation& v) {
  const std::size_t j = v.segment;
  const int l = ch[j].label[v.axis];
  const double target = chart_coord(ch[j], coords_in(c, s.points[j + 1], s.carriers[j]), v.axis);
  auto value = [&](std::size_t i) {
    int ax = ch[i].axis_of(l);
    return ax < 0 ? 0.0 : chart_coord(ch[i], coords_in(c, s.points[i], s.carriers[i]), ax);
  };
  std::size_t i0 = j;
  while (i0 > 0) {
    int ax = ch[i0].axis_of(l);
    if (ax < 0 || !ch[i0].inherited[ax]) break;
    --i0;
  }
  if (value(i0) <= target) {
    for (std::size_t i = i0; i <= j; ++i) {
      int ax = ch[i].axis_of(l);
      if (ax >= 0) set_chart_coord(c, s, ch, i, ax, std::min(value(i), target));
    }
  } else {
    // the whole chain from x_0 lies above the target: flatten it at x_0's
    // value; the lazily oriented chart then reflects this axis
    const double base = value(0);
    for (std::size_t i = 1; i <= j; ++i) set_chart_coord(c, s, ch, i, ch[i].axis_of(l), base);
  }
}

}  // namespace

MString normalize_string(const CubeComplex& c, const MString& s, double p, double merge_tol) {
  if (s.points.size() < 2) throw Error(ErrorCode::kBrokenString, "a string needs two points");
  if (!s.carriers.empty() && s.carriers.size() + 1 != s.points.size()) {
    throw Error(ErrorCode::kBrokenString, "need one carrier per segment");
  }
  MString out;
  for (const PointLocation& x : s.points) out.points.push_back(canonical_point(c, x, 1e-12));
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const PointLocation &x = out.points[i], &y = out.points[i + 1];
    if (!s.carriers.empty()) {
      CubeId k = s.carriers[i];
      if (k < 0 || k >= static_cast<CubeId>(c.num_cubes()) || !c.contains(k, x.cube) || !c.contains(k, y.cube)) {
        throw Error(ErrorCode::kBrokenString, "carrier of segment " + std::to_string(i) + " misses an endpoint");
      }
      if (!c.is_maximal(k)) k = c.maximal_cofaces(k).front();
      out.carriers.push_back(k);
    } else {
      const PointLocation pair[] = {x, y};
      auto k = maximal_holding(c, pair);
      if (!k) throw Error(ErrorCode::kBrokenString, "no cube holds segment " + std::to_string(i));
      out.carriers.push_back(*k);
    }
  }
  // merge (near-)duplicate consecutive points, keeping both endpoints
  for (std::size_t i = 0; i + 1 < out.points.size() && out.points.size() > 2;) {
    if (seg(c, out.points[i], out.points[i + 1], out.carriers[i], p) >= merge_tol) {
      ++i;
      continue;
    }
    // drop the interior one of the pair; its neighbours' carrier must hold the survivor
    const bool drop_next = i + 2 < out.points.size();
    const std::size_t gone = drop_next ? i + 1 : i;
    const PointLocation& keep = out.points[drop_next ? i : i + 1];
    const std::size_t other_seg = drop_next ? i + 1 : i - 1;
    const PointLocation& far = out.points[drop_next ? i + 2 : i - 1];
    CubeId k = out.carriers[other_seg];
    if (!c.contains(k, keep.cube)) {
      const PointLocation pair[] = {keep, far};
      auto found = maximal_holding(c, pair);
      if (!found) {
        ++i;
        continue;
      }
      k = *found;
    }
    out.carriers[other_seg] = k;
    out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(gone));
    out.carriers.erase(out.carriers.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

TautVerdict is_taut(const CubeComplex& c, const MString& input, double p, double tol) {
  MString s = normalize_string(c, input, p);
  const std::size_t m = s.carriers.size();
  for (std::size_t i = 1; i < m; ++i) {
    std::span<const PointLocation> triple(&s.points[i - 1], 3);
    if (maximal_holding(c, triple)) {
      return {false, 1, static_cast<int>(i), "a cube holds points " + std::to_string(i - 1) + ".." + std::to_string(i + 1)};
    }
    const double through = seg(c, s.points[i - 1], s.points[i], s.carriers[i - 1], p) +
                           seg(c, s.points[i], s.points[i + 1], s.carriers[i], p);
    const double best = single_break_distance(c, s.points[i - 1], s.carriers[i - 1], s.points[i + 1], s.carriers[i], p).length;
    if (through > best + tol * std::max(1.0, best)) {
      return {false, 2, static_cast<int>(i), "point " + std::to_string(i) + " is off the interval of its neighbours"};
    }
  }
  auto charts = oriented_charts(c, s, tol);
  if (auto v = first_decrease(c, s, charts, tol)) {
    return {false, 3, static_cast<int>(v->segment), "chart coordinate decreases on segment " + std::to_string(v->segment)};
  }
  return {};
}

MString tauten(const CubeComplex& c, const MString& input, double p) {
  MString s = normalize_string(c, input, p);
  const int cap = 1000 + 100 * static_cast<int>(s.points.size()) * std::max(1, c.dimension());
  for (int iter = 0; iter < cap; ++iter) {
    s = normalize_string(c, s, p);
    const std::size_t m = s.carriers.size();
    bool changed = false;
    // co-cubical triples: the middle point is redundant
    for (std::size_t i = 1; i < m && !changed; ++i) {
      std::span<const PointLocation> triple(&s.points[i - 1], 3);
      if (auto k = maximal_holding(c, triple)) {
        s.points.erase(s.points.begin() + static_cast<std::ptrdiff_t>(i));
        s.carriers.erase(s.carriers.begin() + static_cast<std::ptrdiff_t>(i));
        s.carriers[i - 1] = *k;
        changed = true;
      }
    }
    if (changed) continue;
    // betweenness: move a break point to its best position on the shared face
    for (std::size_t i = 1; i < m && !changed; ++i) {
      const double through = seg(c, s.points[i - 1], s.points[i], s.carriers[i - 1], p) +
                             seg(c, s.points[i], s.points[i + 1], s.carriers[i], p);
      BreakResult b = single_break_distance(c, s.points[i - 1], s.carriers[i - 1], s.points[i + 1], s.carriers[i], p);
      if (through > b.length + 1e-12) {
        s.points[i] = b.point;
        changed = true;
      }
    }
    if (changed) continue;
    auto charts = oriented_charts(c, s, 1e-12);
    auto v = first_decrease(c, s, charts, 1e-12);
    if (!v) break;
    clamp_chain(c, s, charts, *v);
  }
  return s;
}

BlockBound check_block_bound(const CubeComplex& c, const MString& input, double p, int segments, double tol) {
  MString s = normalize_string(c, input, p);
  if (segments <= 0) segments = std::max(1, c.dimension()) + 2;
  BlockBound out;
  const std::size_t m = s.carriers.size();
  std::vector<double> len(m);
  for (std::size_t i = 0; i < m; ++i) len[i] = seg(c, s.points[i], s.points[i + 1], s.carriers[i], p);
  const std::size_t w = static_cast<std::size_t>(segments);
  for (std::size_t i = 0; i + w <= m; ++i) {
    double total = 0.0;
    for (std::size_t j = i; j < i + w; ++j) total += len[j];
    if (total < out.min_length) {
      out.min_length = total;
      out.start = static_cast<int>(i);
    }
  }
  out.ok = out.min_length >= 1.0 - tol;
  return out;
}

}  // namespace cubik
