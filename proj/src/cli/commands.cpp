#include "inscribe/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>
#include <Eigen/Geometry>

#include "inscribe/cli/report.hpp"
#include "inscribe/models.hpp"
#include "inscribe/oracle.hpp"
#include "inscribe/solutions.hpp"

namespace inscribe::cli {
namespace {

struct Roi {
  Vec2 lo;
  Vec2 hi;

  bool contains(const Vec2& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
};

std::vector<Vec2> lineIntersections(const CanonicalConfig& cfg) {
  const auto lines = cfg.lines(1.0);
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Vec3 p = lines[i].homogeneous().cross(lines[j].homogeneous());
      if (std::abs(p.z()) > 1e-12 * p.head<2>().norm()) out.push_back(p.head<2>() / p.z());
    }
  }
  return out;
}

// Box around the finite line intersections, three times as large.
Roi regionOfInterest(const std::vector<Vec2>& points) {
  Vec2 lo = points.front();
  Vec2 hi = points.front();
  for (const Vec2& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec2 mid = 0.5 * (lo + hi);
  const Vec2 half = (0.5 * (hi - lo)).cwiseMax(Vec2::Constant(0.5));
  return {mid - 3.0 * half, mid + 3.0 * half};
}

std::vector<SolutionSample> bothBranches(const Frame& frame, int n) {
  auto plus = sample_solution(frame, n, Branch::plus);
  auto minus = sample_solution(frame, n, Branch::minus);
  std::vector<SolutionSample> out;
  out.reserve(plus.size() + minus.size());
  for (std::size_t k = 0; k < plus.size(); ++k) {
    out.push_back(plus[k]);
    out.push_back(minus[k]);
  }
  return out;
}

double coordinate(const SolutionSample& s, char axis) {
  switch (axis) {
    case 'u': return s.coords.u;
    case 'v': return s.coords.v;
    case 't': return s.coords.t;
    default: return s.scale;
  }
}

void buildXy(Scene& scene, const CanonicalConfig& cfg, const Frame& frame, const std::string& what, int samples) {
  const auto corners = lineIntersections(cfg);
  for (const auto& l : cfg.lines(1.0)) scene.lines.push_back(l);
  scene.extent = corners;
  const Roi roi = regionOfInterest(corners);

  if (what == "config") {
    scene.markers = corners;
    return;
  }
  if (what == "solution") {
    // -phi projects onto the same rectangles as phi.
    for (const auto& s : sample_solution(frame, samples)) {
      const auto projected = project_to_C(frame, s, 1e-9);
      const auto* r = std::get_if<Parallelogram>(&projected);
      if (!r) continue;
      std::vector<Vec2> poly{r->vA, r->vB, r->vC, r->vD};
      if (std::all_of(poly.begin(), poly.end(), [&](const Vec2& p) { return roi.contains(p); })) {
        scene.polygons.push_back(std::move(poly));
      }
    }
    if (scene.polygons.empty()) throw GeometryError(ErrorCode::EmptyScene, "no inscribed rectangle in view");
    return;
  }
  // Locus: projected centers along each branch, broken where the curve
  // leaves the view or passes through infinity.
  const LocusReport report = locus(cfg, frame);
  for (const auto& l : report.lines) scene.lines.push_back({l.l1, l.l2, l.l3});
  const double jump = (roi.hi - roi.lo).norm() / 8.0;
  {
    std::vector<Vec2> run;
    auto flush = [&] {
      if (run.size() >= 2) scene.polylines.push_back(run);
      run.clear();
    };
    for (const auto& s : sample_solution(frame, std::max(samples, 1024))) {
      const auto projected = project_to_C(frame, s, 1e-9);
      const auto* r = std::get_if<Parallelogram>(&projected);
      if (!r || !roi.contains(r->center())) {
        flush();
        continue;
      }
      if (!run.empty() && (run.back() - r->center()).norm() > jump) flush();
      run.push_back(r->center());
    }
    flush();
  }
  if (scene.polylines.empty()) throw GeometryError(ErrorCode::EmptyScene, "no rectangle centers in view");
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLine:
    case ErrorCode::AllConcurrent:
    case ErrorCode::AllParallel:
    case ErrorCode::InvalidConfig:
    case ErrorCode::MalformedInput:
    case ErrorCode::EmptyInput:
    case ErrorCode::EmptyScene:
    case ErrorCode::ZeroVector:
      return kInputError;
    default:
      return kNumericalError;
  }
}

std::vector<double> parse_wgrid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos) throw GeometryError(ErrorCode::MalformedInput, "--wgrid expects a:b:n");
  double a = 0;
  double b = 0;
  long n = 0;
  try {
    std::size_t used = 0;
    a = std::stod(spec.substr(0, first), &used);
    if (used != first) throw std::invalid_argument("a");
    const std::string bs = spec.substr(first + 1, second - first - 1);
    b = std::stod(bs, &used);
    if (used != bs.size()) throw std::invalid_argument("b");
    const std::string ns = spec.substr(second + 1);
    n = std::stol(ns, &used);
    if (used != ns.size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw GeometryError(ErrorCode::MalformedInput, "--wgrid expects a:b:n, got " + spec);
  }
  if (n < 1) throw GeometryError(ErrorCode::EmptyInput, "--wgrid needs at least one slice");
  std::vector<double> out;
  for (long k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / (n - 1));
  return out;
}

Scene build_scene(const CanonicalConfig& cfg, const Frame& frame, const std::string& what, const std::string& plane,
                  int samples) {
  if (samples < 1) throw GeometryError(ErrorCode::EmptyInput, "sample count must be positive");
  Scene scene;
  scene.title = what + " (" + plane + ")";
  if (plane == "xy") {
    buildXy(scene, cfg, frame, what, samples);
    return scene;
  }
  if (what != "solution") throw GeometryError(ErrorCode::EmptyScene, what + " has no " + plane + " view");

  const char h = plane[0];
  const char v = plane[1];
  for (Branch branch : {Branch::plus, Branch::minus}) {
    std::vector<Vec2> curve;
    for (const auto& s : sample_solution(frame, samples, branch)) curve.emplace_back(coordinate(s, h), coordinate(s, v));
    curve.push_back(curve.front());
    scene.polylines.push_back(std::move(curve));
  }
  if (plane == "uw") {
    // Rectangles at infinity: scale zero.
    for (const auto& s : samples_at_scale(frame, 0.0)) scene.markers.emplace_back(s.coords.u, 0.0);
  }
  return scene;
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Rectangles inscribed in four lines"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outPath;
  double tol = kDefaultTol;
  int samples = 0;
  std::string branch = "plus";
  std::string wgrid;
  int grid = 24;
  std::string what;
  std::string plane = "xy";

  auto* analyze = app.add_subcommand("analyze", "Normalize a configuration and report its basis");
  auto* solve = app.add_subcommand("solve", "Sample the curve of unit rectangles");
  auto* locusCmd = app.add_subcommand("locus", "Classify the locus of rectangle centers");
  auto* oracle = app.add_subcommand("oracle", "Find unit rectangles by multi-start Newton");
  auto* render = app.add_subcommand("render", "Draw a configuration, its solution or its locus as SVG");
  for (auto* sub : {analyze, solve, locusCmd, oracle, render}) {
    sub->add_option("--config", configPath, "Configuration JSON")->required();
    sub->add_option("--out", outPath, "Output file")->required();
  }
  for (auto* sub : {analyze, solve, locusCmd, render}) {
    sub->add_option("--tol", tol, "Tolerance for parallelism and degeneracy");
  }
  solve->add_option("--samples", samples, "Samples per branch")->required()->check(CLI::PositiveNumber);
  solve->add_option("--branch", branch, "plus, minus or both")->check(CLI::IsMember({"plus", "minus", "both"}));
  oracle->add_option("--wgrid", wgrid, "Scales a:b:n")->required();
  oracle->add_option("--grid", grid, "Starts per axis")->check(CLI::Range(8, 4096));
  render->add_option("--what", what, "config, solution or locus")
      ->required()
      ->check(CLI::IsMember({"config", "solution", "locus"}));
  render->add_option("--plane", plane, "xy, uw, uv, ut or vt")->check(CLI::IsMember({"xy", "uw", "uv", "ut", "vt"}));
  render->add_option("--samples", samples, "Samples per branch")->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"inscribe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Normalized normalized = load_config(configPath, tol);
    const CanonicalConfig& cfg = normalized.config;

    if (*oracle) {
      write_atomic(outPath, oracle_csv(oracle_scan(cfg, parse_wgrid(wgrid), grid)));
      return kOk;
    }

    const Frame frame = build_frame(cfg, tol);
    if (*analyze) {
      write_atomic(outPath, analysis_json(normalized, frame, locus(cfg, frame, tol)).dump(2) + "\n");
    } else if (*solve) {
      std::vector<SolutionSample> rows;
      if (branch == "both") {
        rows = bothBranches(frame, samples);
      } else {
        rows = sample_solution(frame, samples, branch == "plus" ? Branch::plus : Branch::minus);
      }
      write_atomic(outPath, solution_csv(rows));
    } else if (*locusCmd) {
      write_atomic(outPath, locus_json(locus(cfg, frame, tol)).dump(2) + "\n");
    } else if (*render) {
      write_atomic(outPath, render_svg(build_scene(cfg, frame, what, plane, samples > 0 ? samples : 256)));
    }
    return kOk;
  } catch (const GeometryError& e) {
    std::cerr << "inscribe: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "inscribe: " << e.what() << "\n";
    return kIoFailure;
  }
}

}  // namespace inscribe::cli
