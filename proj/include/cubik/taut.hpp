#pragma once

#include <string>

#include "cubik/metric.hpp"

namespace cubik {

struct TautVerdict {
  bool taut = true;
  int condition = 0;  // 1: co-cubical triple, 2: betweenness, 3: monotonicity
  int index = -1;     // offending point (conditions 1, 2) or segment (3)
  std::string message;
};

/// Canonical points, maximal carriers (a non-maximal carrier is replaced by
/// its first maximal coface) and consecutive points closer than `merge_tol`
/// merged. Throws kBrokenString.
MString normalize_string(const CubeComplex& c, const MString& s, double p, double merge_tol = 1e-12);

/// Checks the three tautness conditions along the running chart: no cube
/// holds x_{i-1}, x_i, x_{i+1}; x_i lies in the metric interval of its
/// neighbours in C_{i-1} ∪ C_i; chart coordinates never decrease.
/// Throws kBrokenString.
TautVerdict is_taut(const CubeComplex& c, const MString& s, double p, double tol = 1e-9);

/// Taut string with the same endpoints and no greater length: cancels
/// co-cubical points, re-projects break points failing betweenness, and
/// clamps decreasing chart coordinates (reflecting an axis when the whole
/// chain from x_0 lies above the target). Length is preserved when s is
/// length-minimal. Throws kBrokenString.
MString tauten(const CubeComplex& c, const MString& s, double p);

struct BlockBound {
  bool ok = true;
  double min_length = kInfNorm;  // over all windows checked
  int start = -1;                // first point of the shortest window
};

/// Every window of `segments` consecutive segments (default dim + 2, i.e.
/// dim + 3 points) must have length >= 1 - tol.
BlockBound check_block_bound(const CubeComplex& c, const MString& s, double p, int segments = 0,
                             double tol = 1e-9);

}  // namespace cubik
