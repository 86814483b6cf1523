#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "cubik/complex.hpp"

namespace cubik {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// l_p norm of a vector; p = kInfNorm gives the max norm.
double norm_p(std::span<const double> v, double p);

/// l_p distance between two coordinate vectors of one cube.
double cube_distance(std::span<const double> x, std::span<const double> y, double p);

/// An m-string: points x_0..x_m and carriers C_i containing x_i, x_{i+1}.
struct MString {
  std::vector<PointLocation> points;
  std::vector<CubeId> carriers;  // size points.size() - 1
};

/// Sum of per-carrier segment lengths. Missing carriers (empty vector) are
/// looked up. Throws kBrokenString when a carrier misses one of its points.
double string_length(const CubeComplex& c, const MString& s, double p);

/// Smallest cube containing both points, or nullopt.
std::optional<CubeId> common_cube(const CubeComplex& c, const PointLocation& x, const PointLocation& y);

/// Distance in the length metric of k1 ∪ k2 (two cubes meeting in a face)
/// from x ∈ k1 to z ∈ k2 through one break point y ∈ k1 ∩ k2.
struct BreakResult {
  double length = 0.0;
  PointLocation point;  // y, canonical
};
BreakResult single_break_distance(const CubeComplex& c, const PointLocation& x, CubeId k1, const PointLocation& z,
                                  CubeId k2, double p);

/// A coordinate box inside one maximal cube; endpoint sets of the solver are
/// unions of such boxes and must list every maximal cube they meet.
struct BoxEnd {
  CubeId cube = 0;
  std::vector<double> lo, hi;
};
using EndSet = std::vector<BoxEnd>;

/// Degenerate boxes at p, one per maximal cube containing p.
EndSet point_end(const CubeComplex& c, const PointLocation& p);

struct SolverOptions {
  double sweep_tol = 1e-12;      // stop when a sweep changes the length by less
  int max_sweeps = 10000;
  double prune_tol = 1e-10;      // galleries whose bound is within this of the best are dropped
  double cap_factor = 1.0;       // multiplies the gallery length cap
  std::int64_t node_budget = 2'000'000;
};

struct DistanceResult {
  double length = 0.0;
  MString string;                // from a point of `from` to a point of `to`
  std::int64_t galleries = 0;    // search nodes expanded
};

/// Gallery search for l_p distances on one complex. Keeps a reference to the
/// complex, which must outlive the solver.
class GeodesicSolver {
 public:
  GeodesicSolver(const CubeComplex& c, double p, SolverOptions options = {});
  ~GeodesicSolver();
  GeodesicSolver(GeodesicSolver&&) noexcept;

  /// Throws kUnreachable, kTooLarge (node budget).
  DistanceResult distance(const EndSet& from, const EndSet& to) const;
  DistanceResult distance(const PointLocation& a, const PointLocation& b) const;

  /// Shortest string through a fixed gallery of maximal cubes (consecutive
  /// cubes must meet). a lies in the first cube, b in the last.
  DistanceResult along_gallery(std::span<const CubeId> gallery, const PointLocation& a,
                               const PointLocation& b) const;

  const CubeComplex& complex() const { return *c_; }
  double p() const { return p_; }

 private:
  DistanceResult solve(const EndSet& from, const EndSet& to) const;

  struct Impl;
  const CubeComplex* c_;
  double p_;
  SolverOptions options_;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper. Throws kUnreachable.
DistanceResult distance(const CubeComplex& c, const PointLocation& a, const PointLocation& b, double p);

/// Dijkstra on the lattice of spacing 1/k inside every cube. Lattice points
/// are joined inside a cube when their index offsets lie in [-radius, radius]^d;
/// radius 0 picks a default by norm and dimension (see README).
double grid_oracle_distance(const CubeComplex& c, const PointLocation& a, const PointLocation& b, double p,
                            int k, int radius = 0);

/// Reusable lattice for many oracle queries on one complex.
class GridOracle {
 public:
  GridOracle(const CubeComplex& c, double p, int k, int radius = 0);
  ~GridOracle();
  double distance(const PointLocation& a, const PointLocation& b) const;
  int num_nodes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cubik
