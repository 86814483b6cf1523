#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubik/complex.hpp"
#include "cubik/graph.hpp"

namespace cubik {

/// I(u,v) = {z : d(u,z) + d(z,v) = d(u,v)}, sorted.
std::vector<VertexId> interval(const Graph& g, VertexId u, VertexId v);

struct MedianResult {
  enum class Kind { kUnique, kNoMedian, kMultipleMedians };
  Kind kind = Kind::kUnique;
  VertexId median = -1;
  std::vector<VertexId> intersection;  // I(x,y) ∩ I(y,z) ∩ I(z,x), sorted
};

MedianResult median_point(const Graph& g, VertexId x, VertexId y, VertexId z);

/// Verdict of is_median. `median` comes from the direct all-triples check when
/// the graph has at most kDirectMedianLimit vertices, otherwise from the
/// characterization (triangle-free + quadrangle condition + no K_{2,3}).
struct MedianVerdict {
  bool median = true;
  bool connected = true;
  bool triangle_free = true;
  bool quadrangle = true;
  bool k23_free = true;
  bool direct = false;  // direct check was run

  std::vector<VertexId> triangle;            // a, b, c
  std::vector<VertexId> quadrangle_witness;  // u, v, w, z
  std::vector<VertexId> k23;                 // two hubs, then three common neighbors
  std::optional<std::array<VertexId, 3>> bad_triple;
  MedianResult bad_median;
};

inline constexpr int kDirectMedianLimit = 512;

MedianVerdict is_median(const Graph& g);

/// Brute-force quadrangle condition over all 4-tuples; test oracle.
bool quadrangle_condition_bruteforce(const Graph& g);

/// 2-convexity of the connected set `s` in a median graph.
/// Throws kNotMedian, kNotConnected (s not connected or empty).
bool is_convex(const Graph& g, std::span<const VertexId> s);

/// Same check without the median precondition test.
bool is_two_convex(const Graph& g, std::span<const VertexId> s);

/// Convexity by the definition: I(x,y) ⊆ s for all x, y ∈ s.
bool is_convex_bruteforce(const Graph& g, std::span<const VertexId> s);

struct GateMap {
  std::vector<VertexId> target;  // sorted
  std::vector<VertexId> gate;    // per vertex of g
};

/// Throws kNotMedian, kNotConvex.
GateMap gate_map(const Graph& g, std::span<const VertexId> a);

struct LinkVerdict {
  bool ok = true;
  CubeId center = -1;              // the n-cube Q
  std::vector<CubeId> witness;     // three (n+2)-cubes with no common (n+3)-cube
};

LinkVerdict link_condition_check(const CubeComplex& c);

struct Cat0Verdict {
  bool cat0 = true;
  std::string reason;  // "", "missing cubes", "graph not median"
};

Cat0Verdict is_cat0(const CubeComplex& c);

}  // namespace cubik
