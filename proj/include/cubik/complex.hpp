#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cubik/graph.hpp"

namespace cubik {

using CubeId = int;

inline constexpr int kMaxDimension = 16;

/// A combinatorial k-cube. `corners[i]` is the corner whose binary word over
/// the cube's axes is i (bit l = coordinate along axis l). Canonical form:
/// corners[0] is the minimum-id corner and axes are ordered by ascending id of
/// the axis neighbor of corners[0].
struct Cube {
  int dim = 0;
  std::vector<VertexId> corners;

  bool operator==(const Cube&) const = default;
};

/// Brings a binary-word corner array into canonical form. The array length
/// must be a power of two; structure is not validated here.
std::vector<VertexId> canonicalize_corners(std::span<const VertexId> corners);

/// How a face F sits inside a cube C: face axis a maps to cube axis axis[a],
/// reversed when flip[a]; every other cube axis is pinned to 0 or 1.
struct FaceEmbedding {
  std::vector<int> axis;
  std::vector<bool> flip;
  std::vector<int> pinned;  // per cube axis: -1 when free, else 0 or 1

  /// Face coordinates -> cube coordinates.
  std::vector<double> to_cube(std::span<const double> face_coords) const;
  /// Cube coordinates -> face coordinates (pinned axes are dropped).
  std::vector<double> to_face(std::span<const double> cube_coords) const;
};

/// A point of |C|: a cube and local coordinates in [0,1]^dim.
struct PointLocation {
  CubeId cube = 0;
  std::vector<double> coords;

  bool operator==(const PointLocation&) const = default;
};

/// Finite cube complex. Immutable after construction; stores every cube
/// (faces included). Cube ids are assigned by sorting cubes by descending
/// dimension, then lexicographically by canonical corner array.
class CubeComplex {
 public:
  /// Validating constructor (build_from_cubes). `vertices` must be exactly
  /// {0..n-1} in any order; each raw cube is a binary-word corner array.
  static CubeComplex build(std::span<const VertexId> vertices,
                           std::span<const std::vector<VertexId>> raw_cubes);
  static CubeComplex build(int num_vertices, std::span<const std::vector<VertexId>> raw_cubes);

  int num_vertices() const { return graph_.num_vertices(); }
  int dimension() const { return dimension_; }
  const Graph& graph() const { return graph_; }

  std::size_t num_cubes() const { return cubes_.size(); }
  const Cube& cube(CubeId id) const { return cubes_[id]; }
  std::span<const Cube> cubes() const { return cubes_; }

  std::span<const CubeId> maximal_cubes() const { return maximal_; }
  bool is_maximal(CubeId id) const { return is_maximal_[id]; }

  /// Cubes (any dimension) having v as a corner.
  std::span<const CubeId> cubes_at(VertexId v) const { return incidence_[v]; }
  std::span<const CubeId> maximal_cubes_at(VertexId v) const { return maximal_incidence_[v]; }

  CubeId vertex_cube(VertexId v) const { return vertex_cube_[v]; }
  std::optional<CubeId> edge_cube(VertexId u, VertexId v) const;

  /// Looks up the cube with exactly this corner set (any order).
  std::optional<CubeId> find_cube(std::span<const VertexId> corner_set) const;

  /// True when `face` is a face of `cube` (including equality).
  bool contains(CubeId cube, CubeId face) const;

  /// Corner index of v inside `cube`, or -1.
  int corner_index(CubeId cube, VertexId v) const;

  FaceEmbedding embedding(CubeId face, CubeId cube) const;

  /// Maximal cubes whose corner set includes every corner of `face`.
  std::vector<CubeId> maximal_cofaces(CubeId face) const;

  /// Maximal cubes listed with their canonical corner arrays, in id order.
  std::vector<std::vector<VertexId>> maximal_corner_arrays() const;

  /// Same vertex count and identical cube sets.
  bool operator==(const CubeComplex& other) const { return cubes_ == other.cubes_ && graph_ == other.graph_; }

 private:
  CubeComplex() = default;
  /// Skips validation: `cubes` must already be canonical and face-closed.
  static CubeComplex from_closed(int num_vertices, std::vector<Cube> cubes);
  void index();

  friend CubeComplex relabel_vertices(const CubeComplex& c, std::span<const VertexId> perm);
  friend CubeComplex induced_subcomplex(const CubeComplex& c, std::span<const VertexId> keep);

  Graph graph_;
  int dimension_ = 0;
  std::vector<Cube> cubes_;
  std::map<std::vector<VertexId>, CubeId> by_corner_set_;
  std::vector<std::vector<CubeId>> incidence_;
  std::vector<std::vector<CubeId>> maximal_incidence_;
  std::vector<CubeId> maximal_;
  std::vector<bool> is_maximal_;
  std::vector<CubeId> vertex_cube_;
};

/// All induced hypercube subgraphs of g, canonicalized and sorted like cube ids.
std::vector<std::vector<VertexId>> induced_hypercubes(const Graph& g);

/// Complex whose cubes are exactly the induced hypercubes of g. Throws
/// kBadGluing when those cubes do not glue along faces (only possible for
/// graphs that are not median).
CubeComplex completion_from_graph(const Graph& g);

/// Induced subcomplex on `keep` (sorted ascending), relabeled monotonically so
/// that cube coordinates are unchanged.
CubeComplex induced_subcomplex(const CubeComplex& c, std::span<const VertexId> keep);

/// Renames vertex v to perm[v]; perm must be a permutation of 0..n-1.
CubeComplex relabel_vertices(const CubeComplex& c, std::span<const VertexId> perm);

/// Canonical form of a point: coordinates 0 or 1 drop to the carrying face.
/// Coordinates within `snap` of 0 or 1 are snapped first.
PointLocation canonical_point(const CubeComplex& c, const PointLocation& p, double snap = 0.0);

/// Expresses p (carried by a face of `cube`) in the local coordinates of `cube`.
std::vector<double> coords_in(const CubeComplex& c, const PointLocation& p, CubeId cube);

struct CubeAdjacency {
  CubeId other;
  CubeId shared_face;
};

/// Indexed by cube id: for each maximal cube, the other maximal cubes meeting
/// it and their common face, sorted by other cube id. Non-maximal cubes get an
/// empty list.
std::vector<std::vector<CubeAdjacency>> cube_adjacency(const CubeComplex& c);

}  // namespace cubik
