#pragma once

#include <cstdint>
#include <vector>

#include "cubik/graph.hpp"

namespace cubik {

/// color[v] in 1..num_colors.
struct Coloring {
  std::vector<int> color;
  int num_colors = 0;
};

bool is_valid_coloring(const Graph& g, const Coloring& col);

/// Greedy coloring in smallest-last (degeneracy) order.
Coloring color_greedy(const Graph& g);

/// DSATUR branch and bound. Throws kTooLarge once `node_budget` search nodes
/// have been expanded without a proof of optimality.
Coloring chromatic_exact(const Graph& g, std::int64_t node_budget = 20'000'000);

/// Smallest k admitting a proper k-coloring, by exhaustive search over
/// assignments; test oracle for tiny graphs.
int chromatic_bruteforce(const Graph& g);

}  // namespace cubik
