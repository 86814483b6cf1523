#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubik/coloring.hpp"
#include "cubik/complex.hpp"
#include "cubik/error.hpp"
#include "cubik/hyperplanes.hpp"

namespace cubik {

/// One multicollapse, described in the direction of its inverse expansion.
/// Vertex ids are those of the complex the decomposition belongs to.
struct CollapseStep {
  std::vector<std::vector<VertexId>> cuboids;  // each sorted
  /// (vertex of a cuboid, vertex glued on top of it), grouped by cuboid in
  /// cuboid order; within a group ascending by the first entry.
  std::vector<std::pair<VertexId, VertexId>> new_vertices;
};

/// Steps in collapse order: steps.front() is removed first, steps.back()
/// leaves `base_vertex` alone.
struct Decomposition {
  VertexId base_vertex = 0;
  std::vector<CollapseStep> steps;
};

struct Multicollapse {
  CubeComplex reduced;        // induced on `kept`, relabeled monotonically
  std::vector<VertexId> kept;  // ids of c, ascending
  CollapseStep step;           // ids of c
};

/// Removes the chosen minimal halfspace of each listed hyperplane.
/// Throws kNotExtremal, kNotDisjoint, kNotCat0.
Multicollapse multicollapse_round(const CubeComplex& c, std::span<const int> hyperplanes);
Multicollapse multicollapse_round(const CubeComplex& c, const HyperplaneStructure& s,
                                  std::span<const int> hyperplanes);

/// Throws kNotCat0.
Decomposition collapse_all(const CubeComplex& c);

struct Expansion {
  CubeComplex complex;
  /// Fresh ids per cuboid, aligned with the cuboid's ascending vertex list.
  std::vector<std::vector<VertexId>> fresh;
};

/// Glues L × [0,1] onto c along L × {0} for every cuboid L. Fresh ids are
/// n, n+1, ... taken cuboid by cuboid, ascending within a cuboid. Cuboids
/// may share vertices. Throws kNotACuboid, kOverlap (vertex repeated inside a
/// cuboid), kUnknownVertex.
Expansion expand_step(const CubeComplex& c, std::span<const std::vector<VertexId>> cuboids);

struct ExpandedComplex {
  CubeComplex complex;             // dense ids in creation order
  std::vector<VertexId> original;  // dense id -> id recorded in the decomposition
};

ExpandedComplex expand_all(const Decomposition& d);

struct DecompositionVerdict {
  bool valid = true;
  std::optional<ErrorCode> failure;
  int step = -1;  // expansion-order index of the failing step
  std::string message;
};

DecompositionVerdict verify_decomposition(const CubeComplex& c, const Decomposition& d);

/// Colors each hyperplane of c by the (1-based, expansion-order) step that
/// introduces it. Uses exactly d.steps.size() colors.
Coloring coloring_from_decomposition(const CubeComplex& c, const HyperplaneStructure& s, const Decomposition& d);

}  // namespace cubik
