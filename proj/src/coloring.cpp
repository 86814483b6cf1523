#include "cubik/coloring.hpp"

#include <algorithm>
#include <string>

#include "cubik/error.hpp"

namespace cubik {

bool is_valid_coloring(const Graph& g, const Coloring& col) {
  if (static_cast<int>(col.color.size()) != g.num_vertices()) return false;
  for (int c : col.color) {
    if (c < 1 || c > col.num_colors) return false;
  }
  for (const Edge& e : g.edges()) {
    if (col.color[e.u] == col.color[e.v]) return false;
  }
  return true;
}

Coloring color_greedy(const Graph& g) {
  const int n = g.num_vertices();
  // smallest-last: repeatedly strip a minimum-degree vertex, color in reverse
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  for (VertexId v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<VertexId> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    VertexId best = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
    }
    removed[best] = 1;
    order.push_back(best);
    for (VertexId w : g.neighbors(best)) {
      if (!removed[w]) --deg[w];
    }
  }
  std::reverse(order.begin(), order.end());

  Coloring out;
  out.color.assign(n, 0);
  for (VertexId v : order) {
    std::vector<char> used(n + 2, 0);
    for (VertexId w : g.neighbors(v)) used[out.color[w]] = 1;
    int c = 1;
    while (used[c]) ++c;
    out.color[v] = c;
    out.num_colors = std::max(out.num_colors, c);
  }
  if (n > 0) out.num_colors = std::max(out.num_colors, 1);
  return out;
}

namespace {

struct Dsatur {
  const Graph& g;
  std::int64_t budget;
  std::int64_t nodes = 0;
  std::vector<int> color;
  std::vector<std::vector<int>> neighbor_count;  // [v][c] neighbors of v with color c
  Coloring best;

  void assign(VertexId v, int c, int delta) {
    for (VertexId w : g.neighbors(v)) neighbor_count[w][c] += delta;
  }

  int saturation(VertexId v, int k) const {
    int s = 0;
    for (int c = 1; c <= k; ++c) s += neighbor_count[v][c] > 0;
    return s;
  }

  void search(int colored, int k) {
    if (++nodes > budget) throw Error(ErrorCode::kTooLarge, "coloring search exceeded node budget");
    if (k >= best.num_colors) return;
    const int n = g.num_vertices();
    if (colored == n) {
      best.color = color;
      best.num_colors = k;
      return;
    }
    VertexId pick = -1;
    int pick_sat = -1, pick_deg = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (color[v]) continue;
      int s = saturation(v, k);
      if (s > pick_sat || (s == pick_sat && g.degree(v) > pick_deg)) {
        pick = v;
        pick_sat = s;
        pick_deg = g.degree(v);
      }
    }
    for (int c = 1; c <= k + 1 && c < best.num_colors; ++c) {
      if (c <= k && neighbor_count[pick][c] > 0) continue;
      color[pick] = c;
      assign(pick, c, +1);
      search(colored + 1, std::max(k, c));
      assign(pick, c, -1);
      color[pick] = 0;
    }
  }
};

}  // namespace

Coloring chromatic_exact(const Graph& g, std::int64_t node_budget) {
  const int n = g.num_vertices();
  Coloring greedy = color_greedy(g);
  if (n == 0) return greedy;
  Dsatur s{g, node_budget, 0, std::vector<int>(n, 0),
           std::vector<std::vector<int>>(n, std::vector<int>(n + 2, 0)), greedy};
  s.search(0, 0);
  return s.best;
}

int chromatic_bruteforce(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  auto edges = g.edges();
  for (int k = 1; k <= n; ++k) {
    std::vector<int> col(n, 0);
    // odometer over all k^n assignments, vertex 0 pinned to color 0
    while (true) {
      bool ok = true;
      for (const Edge& e : edges) {
        if (col[e.u] == col[e.v]) {
          ok = false;
          break;
        }
      }
      if (ok) return k;
      int i = n - 1;
      while (i > 0 && col[i] == k - 1) col[i--] = 0;
      if (i == 0) break;
      ++col[i];
    }
  }
  return n;
}

}  // namespace cubik
