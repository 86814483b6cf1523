#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubik/collapse.hpp"
#include "cubik/complex.hpp"
#include "cubik/metric.hpp"

namespace cubik {

using Interval = std::pair<double, double>;
using Box = std::vector<Interval>;  // one interval per cube axis

/// Boxes on maximal cubes; a maximal cube without an entry misses the set.
/// Faces carry the restriction of their cofaces' boxes.
struct GeneralizedCuboid {
  std::map<CubeId, Box> boxes;

  bool empty() const { return boxes.empty(); }
  bool operator==(const GeneralizedCuboid&) const = default;
};

struct CuboidVerdict {
  bool valid = true;
  std::string reason;
};

/// Boxes inside [0,1], on maximal cubes, agreeing on shared faces, with a
/// connected union.
CuboidVerdict gcuboid_validate(const CubeComplex& c, const GeneralizedCuboid& x);

/// Per-cube intersection; nullopt when empty.
std::optional<GeneralizedCuboid> gcuboid_intersect(const CubeComplex& c, std::span<const GeneralizedCuboid> xs);

bool gcuboid_contains(const CubeComplex& c, const GeneralizedCuboid& x, const PointLocation& p, double tol = 0.0);

/// The point itself as a (degenerate) generalized cuboid.
GeneralizedCuboid point_cuboid(const CubeComplex& c, const PointLocation& p);
/// The whole complex.
GeneralizedCuboid whole_cuboid(const CubeComplex& c);
/// Solver endpoint set covering x.
EndSet cuboid_end(const CubeComplex& c, const GeneralizedCuboid& x);

/// Closed d_inf balls of generalized cuboids, computed along a regular
/// decomposition stage by stage. Keeps references to c.
class BallCalculator {
 public:
  /// Throws kNotCollapsible when d does not verify against c.
  BallCalculator(const CubeComplex& c, const Decomposition& d);
  ~BallCalculator();
  /// Throws kBadParams for r < 0 or an empty x.
  GeneralizedCuboid ball(const GeneralizedCuboid& x, double r) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

GeneralizedCuboid ball_of_gcuboid(const CubeComplex& c, const Decomposition& d, const GeneralizedCuboid& x, double r);

struct PropertyPVerdict {
  enum class Kind { kCommonPoint, kEmpty, kPrecondFailed };
  Kind kind = Kind::kCommonPoint;
  std::optional<PointLocation> witness;
  std::optional<std::pair<int, int>> disjoint_pair;
  std::optional<GeneralizedCuboid> intersection;
};

PropertyPVerdict property_P_check(const CubeComplex& c, std::span<const GeneralizedCuboid> xs);

struct ProbeVerdict {
  enum class Kind { kCommonPointFound, kNoCommonPointAtResolution, kNotAdmissible };
  Kind kind = Kind::kCommonPointFound;
  std::optional<PointLocation> point;
  std::optional<std::pair<int, int>> bad_pair;  // kNotAdmissible
  int resolution = 0;                           // k of the grid search
  double best_excess = 0.0;                     // min over samples of max_i d(p, x_i) - r_i
  std::string method;                           // "balls" or "grid"
};

/// d_inf ball family probe. With a decomposition the balls are intersected
/// exactly; otherwise lattice points of spacing 1/k in every maximal cube are
/// scored and the best ones refined by a local pattern search.
ProbeVerdict hyperconvexity_probe(const CubeComplex& c, std::span<const PointLocation> centers,
                                  std::span<const double> radii, int k, const Decomposition* d = nullptr,
                                  double tol = 1e-9);

}  // namespace cubik
