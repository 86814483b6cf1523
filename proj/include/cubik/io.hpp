#pragma once

#include <string>

#include <json.hpp>

#include "cubik/collapse.hpp"
#include "cubik/coloring.hpp"
#include "cubik/complex.hpp"
#include "cubik/hyperconvex.hpp"
#include "cubik/hyperplanes.hpp"

namespace cubik {

using Json = nlohmann::ordered_json;

/// Numbers in reports and files carry 9 decimals.
double round9(double x);
std::string fixed9(double x);

/// cubecomplex/1. The reader rejects corner arrays not already in canonical
/// order (kBadInput) and otherwise validates like CubeComplex::build.
Json complex_to_json(const CubeComplex& c);
CubeComplex complex_from_json(const Json& j);

/// cubedecomp/1; the file lists steps in expansion order.
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

/// gcuboid/1, boxes keyed by maximal cube id.
Json gcuboid_to_json(const GeneralizedCuboid& x);
GeneralizedCuboid gcuboid_from_json(const Json& j);

/// hyperplanes/1: ids, dual edges, halfspace vertex lists, crossing edges,
/// width and a coloring of the crossing graph.
Json hyperplane_report(const HyperplaneStructure& s, const Coloring& coloring);

/// "c<cube_id>:<x1>,<x2>,..." (no coordinates for a vertex cube).
PointLocation parse_point(const std::string& text);
std::string format_point(const PointLocation& p);

/// Throws kBadInput on unreadable files or malformed JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace cubik
