#include "inscribe/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <utility>

namespace inscribe::cli {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  return buf;
}

std::string pointList(const std::vector<Vec2>& pts) {
  std::string out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) out += ' ';
    out += num(pts[k].x()) + "," + num(-pts[k].y());
  }
  return out;
}

// Segment of the line inside the box, by clipping its parametric form.
std::optional<std::pair<Vec2, Vec2>> clip(const GeneralLine& l, const ViewBox& box) {
  const Vec2 n(l.a, l.b);
  const double nn = n.squaredNorm();
  if (nn == 0.0) return std::nullopt;
  const Vec2 p0 = -l.c / nn * n;
  const Vec2 d(-l.b, l.a);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const double mins[2] = {box.minX, box.minY};
  const double maxs[2] = {box.minX + box.width, box.minY + box.height};
  for (int k = 0; k < 2; ++k) {
    if (d(k) == 0.0) {
      if (p0(k) < mins[k] || p0(k) > maxs[k]) return std::nullopt;
      continue;
    }
    double a = (mins[k] - p0(k)) / d(k);
    double b = (maxs[k] - p0(k)) / d(k);
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(Vec2(p0 + lo * d), Vec2(p0 + hi * d));
}

}  // namespace

ViewBox view_box(const Scene& scene) {
  double minX = std::numeric_limits<double>::infinity();
  double minY = minX;
  double maxX = -minX;
  double maxY = -minX;
  auto grow = [&](const Vec2& p) {
    if (!p.allFinite()) return;
    minX = std::min(minX, p.x());
    maxX = std::max(maxX, p.x());
    minY = std::min(minY, p.y());
    maxY = std::max(maxY, p.y());
  };
  for (const auto& poly : scene.polygons) std::for_each(poly.begin(), poly.end(), grow);
  for (const auto& line : scene.polylines) std::for_each(line.begin(), line.end(), grow);
  std::for_each(scene.markers.begin(), scene.markers.end(), grow);
  std::for_each(scene.extent.begin(), scene.extent.end(), grow);
  if (!(minX <= maxX)) throw GeometryError(ErrorCode::EmptyScene, "nothing to draw");

  double w = maxX - minX;
  double h = maxY - minY;
  const double pad = std::max({w, h, 1e-9}) * 1e-3;
  if (w == 0.0) {
    minX -= pad;
    w = 2 * pad;
  }
  if (h == 0.0) {
    minY -= pad;
    h = 2 * pad;
  }
  return {minX - 0.1 * w, minY - 0.1 * h, 1.2 * w, 1.2 * h};
}

std::string render_svg(const Scene& scene) {
  const ViewBox box = view_box(scene);
  const double stroke = 0.004 * std::max(box.width, box.height);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"" +
         num(box.minX) + " " + num(-(box.minY + box.height)) + " " + num(box.width) + " " + num(box.height) +
         "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  if (!scene.title.empty()) out += "<title>" + scene.title + "</title>\n";
  out += "<g fill=\"none\" stroke-width=\"" + num(stroke) + "\">\n";

  static const char* const kLineColors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd"};
  std::size_t k = 0;
  for (const auto& l : scene.lines) {
    const char* color = kLineColors[k++ % 4];
    if (const auto seg = clip(l, box)) {
      out += "<line x1=\"" + num(seg->first.x()) + "\" y1=\"" + num(-seg->first.y()) + "\" x2=\"" +
             num(seg->second.x()) + "\" y2=\"" + num(-seg->second.y()) + "\" stroke=\"" + color + "\"/>\n";
    }
  }
  for (const auto& poly : scene.polygons) {
    out += "<polygon points=\"" + pointList(poly) + "\" stroke=\"#ff7f0e\"/>\n";
  }
  for (const auto& line : scene.polylines) {
    out += "<polyline points=\"" + pointList(line) + "\" stroke=\"#000000\"/>\n";
  }
  for (const auto& p : scene.markers) {
    out += "<circle cx=\"" + num(p.x()) + "\" cy=\"" + num(-p.y()) + "\" r=\"" + num(3 * stroke) +
           "\" stroke=\"#8c564b\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace inscribe::cli
