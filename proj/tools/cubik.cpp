#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubik/collapse.hpp"
#include "cubik/error.hpp"
#include "cubik/generators.hpp"
#include "cubik/hyperconvex.hpp"
#include "cubik/hyperplanes.hpp"
#include "cubik/io.hpp"
#include "cubik/median.hpp"
#include "cubik/metric.hpp"

using namespace cubik;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kBudget = 3 };

struct Common {
  bool json = false;
  std::string p_text = "inf";
  double tol = 1e-9;
  std::string out;
};

// Verdict-style failures of the mathematical checks map to a negative
// verdict; budgets to 3; everything else is bad input.
int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotMedian:
    case ErrorCode::kNotCat0:
    case ErrorCode::kNotTwoComponents:
    case ErrorCode::kNotCollapsible:
    case ErrorCode::kNotExtremal:
    case ErrorCode::kNotIsomorphic:
      return kNegative;
    case ErrorCode::kTooLarge:
    case ErrorCode::kDimensionTooLarge:
      return kBudget;
    default:
      return kInput;
  }
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInfNorm;
  try {
    std::size_t used = 0;
    double p = std::stod(s, &used);
    if (used == s.size() && p >= 1.0 && std::isfinite(p)) return p;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kBadParams, "--p must be a number >= 1 or inf");
}

std::string p_name(double p) { return std::isinf(p) ? "inf" : fixed9(p); }

CubeComplex load_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

PointLocation load_point(const CubeComplex& c, const std::string& text) {
  PointLocation p = parse_point(text);
  if (p.cube >= static_cast<CubeId>(c.num_cubes())) throw Error(ErrorCode::kBadInput, "unknown cube in " + text);
  if (static_cast<int>(p.coords.size()) != c.cube(p.cube).dim) {
    throw Error(ErrorCode::kBadInput, "point " + text + " needs " + std::to_string(c.cube(p.cube).dim) + " coordinates");
  }
  for (double x : p.coords) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kBadInput, "coordinates must lie in [0,1]: " + text);
  }
  return canonical_point(c, p);
}

void emit(const Common& o, const Json& report, const std::function<void()>& human) {
  if (o.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    human();
  }
}

const char* yes(bool b) { return b ? "yes" : "no"; }

Decomposition decomposition_for(const CubeComplex& c, const std::string& path) {
  return path.empty() ? collapse_all(c) : decomposition_from_json(read_json_file(path));
}

// --- subcommands -----------------------------------------------------------

int cmd_validate(const Common& o, const std::string& file, const std::string& decomp, const std::string& gc) {
  const CubeComplex c = load_complex(file);
  Json r;
  r["valid"] = true;
  r["vertices"] = c.num_vertices();
  r["cubes"] = c.num_cubes();
  r["maximal_cubes"] = c.maximal_cubes().size();
  r["dimension"] = c.dimension();
  int code = kOk;
  std::string note;
  if (!decomp.empty()) {
    const DecompositionVerdict v = verify_decomposition(c, decomposition_from_json(read_json_file(decomp)));
    r["decomposition_valid"] = v.valid;
    if (!v.valid) {
      r["decomposition_step"] = v.step;
      r["decomposition_error"] = v.message;
      note += "decomposition: " + v.message + "\n";
      code = kNegative;
    }
  }
  if (!gc.empty()) {
    const CuboidVerdict v = gcuboid_validate(c, gcuboid_from_json(read_json_file(gc)));
    r["gcuboid_valid"] = v.valid;
    if (!v.valid) {
      r["gcuboid_error"] = v.reason;
      note += "generalized cuboid: " + v.reason + "\n";
      code = kNegative;
    }
  }
  emit(o, r, [&] {
    std::printf("valid complex: %d vertices, %zu cubes (%zu maximal), dimension %d\n", c.num_vertices(),
                c.num_cubes(), c.maximal_cubes().size(), c.dimension());
    if (r.contains("decomposition_valid")) std::printf("decomposition valid: %s\n", yes(r["decomposition_valid"]));
    if (r.contains("gcuboid_valid")) std::printf("generalized cuboid valid: %s\n", yes(r["gcuboid_valid"]));
    std::fputs(note.c_str(), stdout);
  });
  return code;
}

int cmd_check(const Common& o, const std::string& file, bool median, bool cat0, bool link) {
  const CubeComplex c = load_complex(file);
  if (!median && !cat0 && !link) median = cat0 = link = true;
  Json r;
  bool all = true;
  std::string lines;
  if (median) {
    const MedianVerdict v = is_median(c.graph());
    r["median"] = v.median;
    all = all && v.median;
    lines += std::string("median: ") + yes(v.median) + "\n";
  }
  if (cat0) {
    const Cat0Verdict v = is_cat0(c);
    r["cat0"] = v.cat0;
    if (!v.cat0) r["cat0_reason"] = v.reason;
    all = all && v.cat0;
    lines += std::string("cat0: ") + yes(v.cat0) + (v.cat0 ? "" : " (" + v.reason + ")") + "\n";
  }
  if (link) {
    const LinkVerdict v = link_condition_check(c);
    r["link"] = v.ok;
    if (!v.ok) {
      r["link_center"] = v.center;
      r["link_witness"] = v.witness;
    }
    all = all && v.ok;
    lines += std::string("link condition: ") + yes(v.ok) + "\n";
  }
  emit(o, r, [&] { std::fputs(lines.c_str(), stdout); });
  return all ? kOk : kNegative;
}

Coloring crossing_coloring(const HyperplaneStructure& s, bool exact) {
  return exact ? chromatic_exact(s.crossing()) : color_greedy(s.crossing());
}

int cmd_hyperplanes(const Common& o, const std::string& file, bool exact) {
  const CubeComplex c = load_complex(file);
  const HyperplaneStructure s(c);
  const Json r = hyperplane_report(s, crossing_coloring(s, exact));
  if (!o.out.empty()) write_json_file(o.out, r);
  emit(o, r, [&] {
    std::printf("%d hyperplanes, %zu crossing pairs, width %d, %d colors\n", s.size(), s.crossing().num_edges(),
                r["width"].get<int>(), r["colors"].get<int>());
    for (int h = 0; h < s.size(); ++h) {
      std::printf("h%d: %zu dual edges, sides of %zu and %zu vertices\n", h, s.hyperplane(h).dual_edges.size(),
                  s.halfspace(h, 0).vertices.size(), s.halfspace(h, 1).vertices.size());
    }
  });
  return kOk;
}

int cmd_width(const Common& o, const std::string& file) {
  const CubeComplex c = load_complex(file);
  const int w = width(c);
  Json r;
  r["width"] = w;
  emit(o, r, [&] { std::printf("%d\n", w); });
  return kOk;
}

int cmd_color(const Common& o, const std::string& file, bool exact) {
  const CubeComplex c = load_complex(file);
  const HyperplaneStructure s(c);
  const Coloring col = crossing_coloring(s, exact);
  Json r;
  r["colors"] = col.num_colors;
  r["exact"] = exact;
  r["coloring"] = col.color;
  emit(o, r, [&] {
    std::printf("%d colors%s\n", col.num_colors, exact ? " (chromatic number)" : " (greedy)");
    for (std::size_t h = 0; h < col.color.size(); ++h) std::printf("h%zu: %d\n", h, col.color[h]);
  });
  return kOk;
}

int cmd_collapse(const Common& o, const std::string& file) {
  const CubeComplex c = load_complex(file);
  const Decomposition d = collapse_all(c);
  const Json dj = decomposition_to_json(d);
  if (!o.out.empty()) write_json_file(o.out, dj);
  Json r;
  r["steps"] = d.steps.size();
  r["base_vertex"] = d.base_vertex;
  if (o.out.empty()) r["decomposition"] = dj;
  emit(o, r, [&] {
    std::printf("collapsed in %zu steps to vertex %d\n", d.steps.size(), d.base_vertex);
    if (o.out.empty()) std::cout << dj.dump(2) << '\n';
  });
  return kOk;
}

int cmd_expand(const Common& o, const std::string& file) {
  const Decomposition d = decomposition_from_json(read_json_file(file));
  const ExpandedComplex e = expand_all(d);
  std::vector<bool> seen(e.original.size(), false);
  for (VertexId v : e.original) {
    if (v < 0 || v >= static_cast<VertexId>(seen.size()) || seen[v]) {
      throw Error(ErrorCode::kBadInput, "decomposition vertex ids are not 0..n-1");
    }
    seen[v] = true;
  }
  const CubeComplex c = relabel_vertices(e.complex, e.original);
  const Json cj = complex_to_json(c);
  if (!o.out.empty()) write_json_file(o.out, cj);
  Json r;
  r["vertices"] = c.num_vertices();
  r["cubes"] = c.num_cubes();
  if (o.out.empty()) r["complex"] = cj;
  emit(o, r, [&] {
    std::printf("expanded to %d vertices, %zu cubes\n", c.num_vertices(), c.num_cubes());
    if (o.out.empty()) std::cout << cj.dump(2) << '\n';
  });
  return kOk;
}

int cmd_dist(const Common& o, const std::string& file, const std::string& from, const std::string& to, int grid,
             bool show_string) {
  const CubeComplex c = load_complex(file);
  const double p = parse_p(o.p_text);
  const PointLocation a = load_point(c, from), b = load_point(c, to);
  const DistanceResult d = GeodesicSolver(c, p).distance(a, b);
  Json r;
  r["p"] = p_name(p);
  r["distance"] = round9(d.length);
  std::optional<double> oracle;
  if (grid > 0) {
    oracle = grid_oracle_distance(c, a, b, p, grid);
    r["grid"] = grid;
    r["grid_distance"] = round9(*oracle);
  }
  if (show_string) {
    Json s = Json::array();
    for (const PointLocation& x : d.string.points) s.push_back(format_point(x));
    r["string"] = std::move(s);
  }
  emit(o, r, [&] {
    std::printf("%s\n", fixed9(d.length).c_str());
    if (oracle) std::printf("grid(%d): %s\n", grid, fixed9(*oracle).c_str());
    if (show_string) {
      for (const PointLocation& x : d.string.points) std::printf("  %s\n", format_point(x).c_str());
    }
  });
  return kOk;
}

int cmd_ball(const Common& o, const std::string& file, const std::string& decomp, const std::string& center,
             const std::string& gc, double radius) {
  const CubeComplex c = load_complex(file);
  if (center.empty() == gc.empty()) throw Error(ErrorCode::kBadParams, "give exactly one of --center, --gcuboid");
  GeneralizedCuboid x;
  if (!center.empty()) {
    x = point_cuboid(c, load_point(c, center));
  } else {
    x = gcuboid_from_json(read_json_file(gc));
    const CuboidVerdict v = gcuboid_validate(c, x);
    if (!v.valid) throw Error(ErrorCode::kBadInput, "generalized cuboid: " + v.reason);
  }
  const GeneralizedCuboid b = ball_of_gcuboid(c, decomposition_for(c, decomp), x, radius);
  const Json bj = gcuboid_to_json(b);
  if (!o.out.empty()) write_json_file(o.out, bj);
  emit(o, bj, [&] {
    for (const auto& [k, box] : b.boxes) {
      std::printf("c%d:", k);
      for (auto [lo, hi] : box) std::printf(" [%s, %s]", fixed9(lo).c_str(), fixed9(hi).c_str());
      std::printf("\n");
    }
  });
  return kOk;
}

int cmd_hyperconvex(const Common& o, const std::string& file, const std::string& decomp,
                    const std::vector<std::string>& centers_text, const std::vector<double>& radii, int grid,
                    const std::string& method) {
  const CubeComplex c = load_complex(file);
  if (centers_text.size() != radii.size() || centers_text.empty()) {
    throw Error(ErrorCode::kBadParams, "give one --radius per --center");
  }
  std::vector<PointLocation> centers;
  for (const std::string& t : centers_text) centers.push_back(load_point(c, t));
  std::optional<Decomposition> d;
  if (method == "balls" || (method == "auto" && !decomp.empty())) {
    d = decomposition_for(c, decomp);
  } else if (method == "auto" && is_cat0(c).cat0) {
    d = collapse_all(c);
  }
  const ProbeVerdict v = hyperconvexity_probe(c, centers, radii, grid, d ? &*d : nullptr, o.tol);
  Json r;
  switch (v.kind) {
    case ProbeVerdict::Kind::kCommonPointFound:
      r["verdict"] = "CommonPointFound";
      r["point"] = format_point(*v.point);
      break;
    case ProbeVerdict::Kind::kNoCommonPointAtResolution:
      r["verdict"] = "NoCommonPointAtResolution";
      r["resolution"] = v.resolution;
      r["best_excess"] = round9(v.best_excess);
      break;
    case ProbeVerdict::Kind::kNotAdmissible:
      r["verdict"] = "NotAdmissible";
      r["pair"] = {v.bad_pair->first, v.bad_pair->second};
      break;
  }
  if (!v.method.empty()) r["method"] = v.method;
  emit(o, r, [&] {
    switch (v.kind) {
      case ProbeVerdict::Kind::kCommonPointFound:
        std::printf("CommonPointFound %s (%s)\n", format_point(*v.point).c_str(), v.method.c_str());
        break;
      case ProbeVerdict::Kind::kNoCommonPointAtResolution:
        std::printf("NoCommonPointAtResolution(%d), best excess %s\n", v.resolution, fixed9(v.best_excess).c_str());
        break;
      case ProbeVerdict::Kind::kNotAdmissible:
        std::printf("NotAdmissible: balls %d and %d are too far apart\n", v.bad_pair->first, v.bad_pair->second);
        break;
    }
  });
  return v.kind == ProbeVerdict::Kind::kCommonPointFound ? kOk : kNegative;
}

struct GenArgs {
  std::string kind;
  int n = 2, a = 2, b = 2, steps = 6, max_cuboids = 3, max_vertices = 200, edges = 0;
  std::optional<std::uint64_t> seed;
  std::string decomp_out;
};

int cmd_gen(const Common& o, const GenArgs& g) {
  const bool random = g.kind == "tree" || g.kind == "random_collapsible" || g.kind == "random_triangle_free";
  if (random && !g.seed) throw Error(ErrorCode::kBadParams, "--seed is required for " + g.kind);
  std::optional<CubeComplex> c;
  std::optional<Decomposition> d;
  if (g.kind == "random_collapsible") {
    RandomCollapsible rc = random_collapsible(*g.seed, g.steps, g.max_cuboids, g.max_vertices);
    c = std::move(rc.complex);
    d = std::move(rc.decomposition);
  } else if (g.kind == "mycielski") {
    c = simplex_graph(mycielski_iterate(g.n));
  } else if (g.kind == "random_triangle_free") {
    c = simplex_graph(random_triangle_free(*g.seed, g.n, g.edges > 0 ? g.edges : 2 * g.n));
  } else {
    c = standard(g.kind, g.n, g.a, g.b, g.seed.value_or(0));
  }
  const Json cj = complex_to_json(*c);
  if (!o.out.empty()) write_json_file(o.out, cj);
  std::string dpath = g.decomp_out;
  if (d && dpath.empty() && !o.out.empty()) dpath = o.out + ".decomp.json";
  if (d && !dpath.empty()) write_json_file(dpath, decomposition_to_json(*d));
  Json r;
  r["kind"] = g.kind;
  r["vertices"] = c->num_vertices();
  r["cubes"] = c->num_cubes();
  r["dimension"] = c->dimension();
  if (!dpath.empty()) r["decomposition"] = dpath;
  if (o.out.empty()) r["complex"] = cj;
  emit(o, r, [&] {
    if (o.out.empty()) {
      std::cout << cj.dump(2) << '\n';
    } else {
      std::printf("%s: %d vertices, %zu cubes, dimension %d\n", g.kind.c_str(), c->num_vertices(), c->num_cubes(),
                  c->dimension());
      if (!dpath.empty()) std::printf("decomposition: %s\n", dpath.c_str());
    }
  });
  return kOk;
}

void add_common(CLI::App* sub, Common& o, bool with_p = false, bool with_out = false) {
  sub->add_flag("--json", o.json, "JSON report on stdout");
  sub->add_option("--tol", o.tol, "numerical tolerance")->capture_default_str();
  if (with_p) sub->add_option("--p", o.p_text, "norm: 1, 2, inf or any p >= 1")->capture_default_str();
  if (with_out) sub->add_option("-o,--output", o.out, "output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubik: cube complexes, collapses, l_p geodesics and hyperconvexity probes"};
  app.require_subcommand(1);
  Common o;
  std::function<int()> run;

  std::string file, decomp, gc, center, from, to, method = "auto";
  bool median = false, cat0 = false, link = false, exact = false, show_string = false;
  int grid = 0, probe_grid = 32;
  double radius = 0.0;
  std::vector<std::string> centers;
  std::vector<double> radii;
  GenArgs g;

  auto* validate = app.add_subcommand("validate", "validate a complex (and optionally a decomposition or set)");
  add_common(validate, o);
  validate->add_option("file", file, "cubecomplex/1 file")->required();
  validate->add_option("--decomp", decomp, "cubedecomp/1 file to verify");
  validate->add_option("--gcuboid", gc, "gcuboid/1 file to validate");
  validate->callback([&] { run = [&] { return cmd_validate(o, file, decomp, gc); }; });

  auto* check = app.add_subcommand("check", "median, CAT(0) and link-condition checks");
  add_common(check, o);
  check->add_option("file", file)->required();
  check->add_flag("--median", median);
  check->add_flag("--cat0", cat0);
  check->add_flag("--link", link);
  check->callback([&] { run = [&] { return cmd_check(o, file, median, cat0, link); }; });

  auto* hyper = app.add_subcommand("hyperplanes", "hyperplane report (hyperplanes/1)");
  add_common(hyper, o, false, true);
  hyper->add_option("file", file)->required();
  hyper->add_flag("--exact", exact, "exact coloring of the crossing graph");
  hyper->callback([&] { run = [&] { return cmd_hyperplanes(o, file, exact); }; });

  auto* wid = app.add_subcommand("width", "length of the longest nested halfspace chain");
  add_common(wid, o);
  wid->add_option("file", file)->required();
  wid->callback([&] { run = [&] { return cmd_width(o, file); }; });

  auto* color = app.add_subcommand("color", "coloring of the crossing graph");
  add_common(color, o);
  color->add_option("file", file)->required();
  color->add_flag("--exact", exact, "chromatic number by exhaustive search");
  color->callback([&] { run = [&] { return cmd_color(o, file, exact); }; });

  auto* collapse = app.add_subcommand("collapse", "regular collapse to a vertex (cubedecomp/1)");
  add_common(collapse, o, false, true);
  collapse->add_option("file", file)->required();
  collapse->callback([&] { run = [&] { return cmd_collapse(o, file); }; });

  auto* expand = app.add_subcommand("expand", "rebuild a complex from a decomposition");
  add_common(expand, o, false, true);
  expand->add_option("file", file, "cubedecomp/1 file")->required();
  expand->callback([&] { run = [&] { return cmd_expand(o, file); }; });

  auto* dist = app.add_subcommand("dist", "l_p distance between two points");
  add_common(dist, o, true);
  dist->add_option("file", file)->required();
  dist->add_option("--from", from, "point c<id>:x1,x2,...")->required();
  dist->add_option("--to", to, "point c<id>:x1,x2,...")->required();
  dist->add_option("--grid", grid, "also report the lattice distance at spacing 1/k");
  dist->add_flag("--string", show_string, "print the geodesic string");
  dist->callback([&] { run = [&] { return cmd_dist(o, file, from, to, grid, show_string); }; });

  auto* ball = app.add_subcommand("ball", "closed l_inf ball of a point or generalized cuboid");
  add_common(ball, o, false, true);
  ball->add_option("file", file)->required();
  ball->add_option("--decomp", decomp, "cubedecomp/1 file (default: collapse the complex)");
  ball->add_option("--center", center, "point c<id>:x1,x2,...");
  ball->add_option("--gcuboid", gc, "gcuboid/1 file");
  ball->add_option("--radius", radius)->required();
  ball->callback([&] { run = [&] { return cmd_ball(o, file, decomp, center, gc, radius); }; });

  auto* hc = app.add_subcommand("hyperconvex", "common point of a family of l_inf balls");
  add_common(hc, o);
  hc->add_option("file", file)->required();
  hc->add_option("--center", centers, "ball center (repeat)")->required();
  hc->add_option("--radius", radii, "ball radius (repeat, aligned with --center)")->required();
  hc->add_option("--decomp", decomp, "cubedecomp/1 file");
  hc->add_option("--grid", probe_grid, "lattice resolution k of the sampling search")->capture_default_str();
  hc->add_option("--method", method, "auto, balls or grid")
      ->check(CLI::IsMember({"auto", "balls", "grid"}))
      ->capture_default_str();
  hc->callback([&] { run = [&] { return cmd_hyperconvex(o, file, decomp, centers, radii, probe_grid, method); }; });

  auto* gen = app.add_subcommand("gen", "generate a complex (cubecomplex/1)");
  add_common(gen, o, false, true);
  gen->add_option("--kind", g.kind,
                  "path, tree, hypercube, grid, k23, tricorner, hollow_square, lshape, mycielski, "
                  "random_triangle_free, random_collapsible")
      ->required();
  gen->add_option("--n", g.n, "size parameter")->capture_default_str();
  gen->add_option("--a", g.a, "grid width")->capture_default_str();
  gen->add_option("--b", g.b, "grid height")->capture_default_str();
  gen->add_option("--seed", g.seed, "seed (required for random kinds)");
  gen->add_option("--steps", g.steps, "expansion steps (random_collapsible)")->capture_default_str();
  gen->add_option("--max-cuboids", g.max_cuboids, "cuboids per step (random_collapsible)")->capture_default_str();
  gen->add_option("--max-vertices", g.max_vertices, "vertex cap (random_collapsible)")->capture_default_str();
  gen->add_option("--edges", g.edges, "edge attempts (random_triangle_free)");
  gen->add_option("--decomp-out", g.decomp_out, "where to write the decomposition (random_collapsible)");
  gen->callback([&] { run = [&] { return cmd_gen(o, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "cubik: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "cubik: " << e.what() << '\n';
    return kInput;
  }
}
