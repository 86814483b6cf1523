#pragma once

#include <array>
#include <boost/dynamic_bitset.hpp>
#include <span>
#include <vector>

#include "cubik/complex.hpp"
#include "cubik/graph.hpp"

namespace cubik {

using VertexSet = boost::dynamic_bitset<>;

struct Hyperplane {
  int id = 0;
  std::vector<Edge> dual_edges;  // sorted
};

struct Halfspace {
  int hyperplane = 0;
  int side = 0;
  std::vector<VertexId> vertices;  // sorted
};

/// Square-relation classes of edges, ordered by minimum edge.
std::vector<Hyperplane> compute_hyperplanes(const CubeComplex& c);

/// Components of the graph minus the dual edges; side 0 holds the smaller end
/// of the minimum dual edge. Throws kNotTwoComponents.
std::array<Halfspace, 2> halfspaces(const CubeComplex& c, const Hyperplane& h);

/// Crossing graph on hyperplane ids: h ~ h' when a square has a dual edge of each.
Graph crossing_graph(const CubeComplex& c, std::span<const Hyperplane> hs);

/// Everything above computed once for a CAT(0) complex.
class HyperplaneStructure {
 public:
  /// Throws kNotCat0 when `check_cat0` and the complex fails is_cat0, and
  /// kNotTwoComponents for a hyperplane that does not split the graph in two.
  explicit HyperplaneStructure(const CubeComplex& c, bool check_cat0 = true);

  int size() const { return static_cast<int>(hyperplanes_.size()); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& hyperplane(int h) const { return hyperplanes_[h]; }
  const Halfspace& halfspace(int h, int side) const { return halfspaces_[h][side]; }
  const VertexSet& side_set(int h, int side) const { return side_bits_[2 * h + side]; }
  /// Side (0/1) of v with respect to h.
  int side_of(int h, VertexId v) const { return side_bits_[2 * h + 1][v] ? 1 : 0; }
  const Graph& crossing() const { return crossing_; }

  /// Hyperplane dual to the edge u–v, or -1 when u, v are not adjacent.
  int hyperplane_of(VertexId u, VertexId v) const;

 private:
  std::vector<Hyperplane> hyperplanes_;
  std::vector<std::array<Halfspace, 2>> halfspaces_;
  std::vector<VertexSet> side_bits_;
  std::vector<std::vector<int>> adjacent_class_;  // aligned with graph neighbors
  Graph graph_;
  Graph crossing_;
};

/// Longest strictly nested chain of halfspaces (number of halfspaces).
int width(const HyperplaneStructure& s);
int width(const CubeComplex& c);

struct ExtremalHyperplane {
  int hyperplane = 0;
  int side = 0;  // the chosen minimal side
};

/// Hyperplanes bounding an inclusion-minimal halfspace. When both sides are
/// minimal the smaller side wins, then the side with the smaller minimum id.
std::vector<ExtremalHyperplane> extremal_hyperplanes(const HyperplaneStructure& s);
std::vector<ExtremalHyperplane> extremal_hyperplanes(const CubeComplex& c);

/// Hyperplanes with u and v on opposite sides, ascending.
std::vector<int> separating_hyperplanes(const HyperplaneStructure& s, VertexId u, VertexId v);
std::vector<int> separating_hyperplanes(const CubeComplex& c, VertexId u, VertexId v);

}  // namespace cubik
