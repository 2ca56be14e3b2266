#include "inscribe/config.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Geometry>

namespace inscribe {
namespace {

constexpr double kPi = std::numbers::pi;

// cos/sin with exact values at quarter turns, so axis-aligned lines stay
// axis-aligned under the candidate rotations.
std::pair<double, double> cosSin(double angle) {
  const double quarters = angle / (kPi / 2);
  const double rounded = std::round(quarters);
  if (std::abs(quarters - rounded) < 1e-14) {
    switch (((static_cast<long>(rounded) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(angle), std::sin(angle)};
}

GeneralLine unitNormal(const GeneralLine& l) {
  const double n = std::hypot(l.a, l.b);
  return {l.a / n, l.b / n, l.c / n};
}

double crossNormals(const GeneralLine& p, const GeneralLine& q) { return p.a * q.b - p.b * q.a; }

// Intersection of two non-parallel lines with unit normals.
Vec2 intersect(const GeneralLine& p, const GeneralLine& q) {
  const Vec3 h = p.homogeneous().cross(q.homogeneous());
  return {h.x() / h.z(), h.y() / h.z()};
}

// Rotation candidates in units of pi/16, in preference order.
std::vector<int> rotationCandidates() {
  std::vector<int> out{0, -8, 8, 16};
  for (int k = 1; k < 16; ++k) {
    if (k == 8) continue;
    out.push_back(-k);
    out.push_back(k);
  }
  return out;
}

}  // namespace

void CanonicalConfig::validate() const {
  for (double v : {mA, bA, mB, mC, mD}) {
    if (!std::isfinite(v)) throw GeometryError(ErrorCode::InvalidConfig, "non-finite coefficient");
  }
  if (mC == mD) throw GeometryError(ErrorCode::InvalidConfig, "lines C and D are parallel (mC == mD)");
}

bool CanonicalConfig::acParallel(double tol) const { return std::abs(mAC()) <= tol; }
bool CanonicalConfig::bdParallel(double tol) const { return std::abs(mBD()) <= tol; }

std::array<GeneralLine, 4> CanonicalConfig::lines(double w) const {
  return {GeneralLine{mA, -1.0, bA * w}, GeneralLine{mB, -1.0, w}, GeneralLine{mC, -1.0, 0.0},
          GeneralLine{mD, -1.0, 0.0}};
}

std::array<GeneralLine, 4> NormalizationRecord::relabel(const InputConfiguration& input) const {
  std::array<GeneralLine, 4> out;
  for (int i = 0; i < 4; ++i) {
    const int step = orientationReversed ? -i : i;
    out[i] = input[((labelShift + step) % 4 + 4) % 4];
  }
  return out;
}

GeneralLine NormalizationRecord::apply(const GeneralLine& line) const {
  // p' = s R (p + t)  =>  line (a, c) becomes (R a, s (c - a.t)).
  const auto [co, si] = cosSin(rotationAngle);
  const double ra = co * line.a - si * line.b;
  const double rb = si * line.a + co * line.b;
  const double c = scaleFactor * (line.c - (line.a * translation.x() + line.b * translation.y()));
  return {ra, rb, c};
}

std::array<GeneralLine, 4> NormalizationRecord::applyAll(const InputConfiguration& input) const {
  auto out = relabel(input);
  for (auto& l : out) l = apply(l);
  return out;
}

bool NormalizationRecord::isIdentity() const {
  return labelShift == 0 && !orientationReversed && rotationAngle == 0.0 && translation.isZero(0.0) &&
         scaleFactor == 1.0;
}

Normalized normalize(const InputConfiguration& input, double tol) {
  InputConfiguration lines;
  for (int i = 0; i < 4; ++i) {
    const auto& l = input[i];
    if (!std::isfinite(l.a) || !std::isfinite(l.b) || !std::isfinite(l.c) || (l.a == 0.0 && l.b == 0.0)) {
      throw GeometryError(ErrorCode::InvalidLine, "line " + std::to_string(i + 1) + " has (a, b) = (0, 0)");
    }
    lines[i] = unitNormal(l);
  }

  int pivot = -1;
  for (int i = 1; i < 4 && pivot < 0; ++i) {
    if (std::abs(crossNormals(lines[0], lines[i])) > tol) pivot = i;
  }
  if (pivot < 0) throw GeometryError(ErrorCode::AllParallel, "all four lines are parallel");

  {
    const Vec2 p = intersect(lines[0], lines[pivot]);
    const double slack = tol * std::max(1.0, p.norm());
    bool concurrent = true;
    for (const auto& l : lines) concurrent = concurrent && std::abs(l.evaluate(p)) <= slack;
    if (concurrent) throw GeometryError(ErrorCode::AllConcurrent, "all four lines meet in one point");
  }

  NormalizationRecord record;
  bool found = false;
  for (int reversed = 0; reversed < 2 && !found; ++reversed) {
    for (int shift = 0; shift < 4 && !found; ++shift) {
      NormalizationRecord candidate;
      candidate.labelShift = shift;
      candidate.orientationReversed = reversed == 1;
      const auto abcd = candidate.relabel(lines);
      if (std::abs(crossNormals(abcd[2], abcd[3])) <= tol) continue;
      const Vec2 origin = intersect(abcd[2], abcd[3]);
      if (std::abs(abcd[1].evaluate(origin)) <= tol * std::max(1.0, origin.norm())) continue;
      candidate.translation = -origin;
      record = candidate;
      found = true;
    }
  }
  // Unreachable when the lines are neither all parallel nor all concurrent.
  if (!found) throw GeometryError(ErrorCode::AllConcurrent, "no relabeling puts C and D in general position");

  const double slopeCap = 1.0 / tol;
  bool rotated = false;
  for (int k : rotationCandidates()) {
    record.rotationAngle = k * kPi / 16;
    record.scaleFactor = 1.0;
    bool ok = true;
    for (const auto& l : record.applyAll(lines)) {
      ok = ok && l.b != 0.0 && std::abs(l.a / l.b) <= slopeCap;
    }
    if (ok) {
      rotated = true;
      break;
    }
  }
  if (!rotated) throw GeometryError(ErrorCode::InvalidConfig, "no rotation candidate avoids vertical lines");

  const auto moved = record.applyAll(lines);
  const double interceptB = -moved[1].c / moved[1].b;
  record.scaleFactor = 1.0 / interceptB;

  const auto canon = record.applyAll(lines);
  auto slope = [](const GeneralLine& l) { return -l.a / l.b; };
  CanonicalConfig cfg{slope(canon[0]), -canon[0].c / canon[0].b, slope(canon[1]), slope(canon[2]),
                      slope(canon[3])};
  cfg.validate();
  return {cfg, record};
}

bool ProjectiveLine::atInfinity(double tol) const {
  return std::hypot(l1, l2) <= tol * std::abs(l3);
}

Diagonals diagonals(const CanonicalConfig& cfg) {
  const auto ls = cfg.lines();
  const Vec3 a = ls[0].homogeneous();
  const Vec3 b = ls[1].homogeneous();
  const Vec3 c = ls[2].homogeneous();
  const Vec3 d = ls[3].homogeneous();
  const Vec3 origin(0, 0, 1);
  constexpr double eps = 1e-12;

  auto same = [&](const Vec3& p, const Vec3& q) { return p.cross(q).norm() <= eps * p.norm() * q.norm(); };
  // Line through the point h (homogeneous) orthogonal to the affine line l.
  auto orthogonalThrough = [](const Vec3& h, const Vec3& l) -> Vec3 {
    const Vec2 dir(l.x(), l.y());  // normal of l = direction of the result
    if (std::abs(h.z()) == 0.0) {
      // Through a point at infinity: parallel to it only if it is the normal direction.
      return Vec3(0, 0, 1);
    }
    const Vec2 p(h.x() / h.z(), h.y() / h.z());
    const Vec2 n(-dir.y(), dir.x());
    return Vec3(n.x(), n.y(), -n.dot(p));
  };

  Vec3 e;
  if (same(a, b)) {
    e = orthogonalThrough(origin, a);
  } else {
    e = origin.cross(a.cross(b));
  }

  Vec3 f;
  if (same(a, d)) {
    f = orthogonalThrough(b.cross(c), a);
  } else {
    f = a.cross(d).cross(b.cross(c));
  }
  return {{e.x(), e.y(), e.z()}, {f.x(), f.y(), f.z()}};
}

bool degenerate_by_diagonals(const CanonicalConfig& cfg, double tol) {
  const auto [e, f] = diagonals(cfg);
  if (e.atInfinity() || f.atInfinity()) return true;
  const Vec2 de = e.direction();
  const Vec2 df = f.direction();
  return std::abs(de.dot(df)) <= tol * de.norm() * df.norm();
}

}  // namespace inscribe
