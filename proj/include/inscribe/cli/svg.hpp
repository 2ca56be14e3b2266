#pragma once

#include <string>
#include <vector>

#include "inscribe/config.hpp"

namespace inscribe::cli {

/// Drawing primitives in plane coordinates (y up).
struct Scene {
  std::string title;
  std::vector<GeneralLine> lines;  // drawn across the whole viewport
  std::vector<std::vector<Vec2>> polygons;
  std::vector<std::vector<Vec2>> polylines;
  std::vector<Vec2> markers;
  /// Extra points that only enlarge the viewport.
  std::vector<Vec2> extent;
};

struct ViewBox {
  double minX = 0;
  double minY = 0;
  double width = 0;
  double height = 0;
};

/// Bounding box of every finite primitive with a 10% margin on each side.
/// Throws EmptyScene when the scene has no finite primitive.
ViewBox view_box(const Scene& scene);

/// SVG 1.1 document. Plane coordinates (x, y) are written as (x, -y) inside a
/// viewBox in those flipped coordinates.
std::string render_svg(const Scene& scene);

}  // namespace inscribe::cli
