#include "cubik/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cubik/error.hpp"

namespace cubik {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kBadInput, what); }

void expect_format(const Json& j, const char* format) {
  if (!j.is_object() || !j.contains("format") || j["format"] != format) {
    bad(std::string("expected format ") + format);
  }
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> as_ints(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const Json& x : j) out.push_back(as_int(x, what));
  return out;
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

double round9(double x) {
  if (!std::isfinite(x)) return x;
  double r = std::round(x * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

std::string fixed9(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", round9(x));
  return buf;
}

Json complex_to_json(const CubeComplex& c) {
  Json j;
  j["format"] = "cubecomplex/1";
  std::vector<int> vs(c.num_vertices());
  for (int v = 0; v < c.num_vertices(); ++v) vs[v] = v;
  j["vertices"] = vs;
  j["cubes"] = c.maximal_corner_arrays();
  return j;
}

CubeComplex complex_from_json(const Json& j) {
  expect_format(j, "cubecomplex/1");
  if (!j.contains("vertices") || !j.contains("cubes")) bad("cubecomplex/1 needs vertices and cubes");
  const std::vector<int> vertices = as_ints(j["vertices"], "vertex");
  if (!j["cubes"].is_array()) bad("cubes must be an array");
  std::vector<std::vector<VertexId>> cubes;
  for (const Json& cube : j["cubes"]) {
    std::vector<VertexId> corners = as_ints(cube, "corner");
    const std::size_t n = corners.size();
    if (n == 0 || (n & (n - 1)) != 0) bad("a cube needs 2^k corners");
    if (canonicalize_corners(corners) != corners) bad("corner array is not in canonical order");
    cubes.push_back(std::move(corners));
  }
  return CubeComplex::build(vertices, cubes);
}

Json decomposition_to_json(const Decomposition& d) {
  Json j;
  j["format"] = "cubedecomp/1";
  j["base_vertex"] = d.base_vertex;
  Json steps = Json::array();
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    Json s;
    s["cuboids"] = it->cuboids;
    Json nv = Json::array();
    for (auto [u, w] : it->new_vertices) nv.push_back({u, w});
    s["new_vertices"] = nv;
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  expect_format(j, "cubedecomp/1");
  if (!j.contains("base_vertex") || !j.contains("steps") || !j["steps"].is_array()) {
    bad("cubedecomp/1 needs base_vertex and steps");
  }
  Decomposition d;
  d.base_vertex = as_int(j["base_vertex"], "base_vertex");
  for (const Json& s : j["steps"]) {
    if (!s.is_object() || !s.contains("cuboids") || !s.contains("new_vertices")) bad("malformed step");
    CollapseStep step;
    if (!s["cuboids"].is_array()) bad("cuboids must be an array");
    for (const Json& cb : s["cuboids"]) step.cuboids.push_back(as_ints(cb, "cuboid vertex"));
    if (!s["new_vertices"].is_array()) bad("new_vertices must be an array");
    for (const Json& p : s["new_vertices"]) {
      const std::vector<int> pair = as_ints(p, "new vertex");
      if (pair.size() != 2) bad("new_vertices entries are [old, new] pairs");
      step.new_vertices.emplace_back(pair[0], pair[1]);
    }
    d.steps.push_back(std::move(step));
  }
  std::reverse(d.steps.begin(), d.steps.end());
  return d;
}

Json gcuboid_to_json(const GeneralizedCuboid& x) {
  Json j;
  j["format"] = "gcuboid/1";
  Json boxes = Json::object();
  for (const auto& [k, box] : x.boxes) {
    Json b = Json::array();
    for (auto [lo, hi] : box) b.push_back({round9(lo), round9(hi)});
    boxes[std::to_string(k)] = std::move(b);
  }
  j["boxes"] = std::move(boxes);
  return j;
}

GeneralizedCuboid gcuboid_from_json(const Json& j) {
  expect_format(j, "gcuboid/1");
  if (!j.contains("boxes") || !j["boxes"].is_object()) bad("gcuboid/1 needs a boxes object");
  GeneralizedCuboid x;
  for (const auto& [key, b] : j["boxes"].items()) {
    CubeId k;
    std::size_t used = 0;
    try {
      k = std::stoi(key, &used);
    } catch (const std::exception&) {
      bad("box key must be a cube id");
    }
    if (used != key.size() || k < 0) bad("box key must be a cube id");
    if (!b.is_array()) bad("a box is an array of intervals");
    Box box;
    for (const Json& iv : b) {
      if (!iv.is_array() || iv.size() != 2) bad("an interval is [s, t]");
      box.emplace_back(as_double(iv[0], "interval end"), as_double(iv[1], "interval end"));
    }
    x.boxes.emplace(k, std::move(box));
  }
  return x;
}

Json hyperplane_report(const HyperplaneStructure& s, const Coloring& coloring) {
  Json j;
  j["format"] = "hyperplanes/1";
  Json hs = Json::array();
  for (int h = 0; h < s.size(); ++h) {
    Json e = Json::array();
    for (const Edge& d : s.hyperplane(h).dual_edges) e.push_back({d.u, d.v});
    Json item;
    item["id"] = h;
    item["dual_edges"] = std::move(e);
    item["halfspaces"] = {s.halfspace(h, 0).vertices, s.halfspace(h, 1).vertices};
    hs.push_back(std::move(item));
  }
  j["hyperplanes"] = std::move(hs);
  Json crossing = Json::array();
  for (const Edge& e : s.crossing().edges()) crossing.push_back({e.u, e.v});
  j["crossing_edges"] = std::move(crossing);
  j["width"] = width(s);
  j["coloring"] = coloring.color;
  j["colors"] = coloring.num_colors;
  return j;
}

PointLocation parse_point(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head.size() < 2 || head[0] != 'c') bad("point must look like c<id>:x1,x2,...");
  PointLocation p;
  std::size_t used = 0;
  try {
    p.cube = std::stoi(head.substr(1), &used);
  } catch (const std::exception&) {
    bad("bad cube id in point '" + text + "'");
  }
  if (used != head.size() - 1 || p.cube < 0) bad("bad cube id in point '" + text + "'");
  if (colon == std::string::npos) return p;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t n = 0;
      p.coords.push_back(std::stod(item, &n));
      if (n != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      bad("bad coordinate '" + item + "' in point '" + text + "'");
    }
  }
  return p;
}

std::string format_point(const PointLocation& p) {
  std::string out = "c" + std::to_string(p.cube);
  for (std::size_t l = 0; l < p.coords.size(); ++l) out += (l == 0 ? ":" : ",") + fixed9(p.coords[l]);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace cubik
