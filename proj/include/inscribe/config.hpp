#pragma once

#include <array>

#include <Eigen/Core>

#include "inscribe/error.hpp"

namespace inscribe {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// The line {(x, y) : a*x + b*y + c = 0}.
struct GeneralLine {
  double a = 0;
  double b = 0;
  double c = 0;

  Vec3 homogeneous() const { return {a, b, c}; }
  double evaluate(const Vec2& p) const { return a * p.x() + b * p.y() + c; }
};

/// Four lines in cyclic vertex order: vertex k of an inscribed quadrilateral
/// lies on line k.
using InputConfiguration = std::array<GeneralLine, 4>;

/// Four lines in standard position:
///   A: y = mA x + bA,  B: y = mB x + 1,  C: y = mC x,  D: y = mD x
/// with mC != mD, so that C and D meet only at the origin.
struct CanonicalConfig {
  double mA = 0;
  double bA = 0;
  double mB = 0;
  double mC = 0;
  double mD = 0;

  /// Throws InvalidConfig when C and D are parallel or an entry is not finite.
  void validate() const;

  double mAC() const { return mA - mC; }
  double mBD() const { return mB - mD; }
  double mCD() const { return mC - mD; }

  bool acParallel(double tol = kDefaultTol) const;
  bool bdParallel(double tol = kDefaultTol) const;
  bool anyParallel(double tol = kDefaultTol) const { return acParallel(tol) || bdParallel(tol); }

  /// Lines A, B, C, D of the scaled configuration C(w); w = 1 gives the
  /// configuration itself, w = 0 the configuration viewed from infinity.
  std::array<GeneralLine, 4> lines(double w = 1.0) const;
};

/// Similarity plus relabeling that carries an input configuration to its
/// canonical form. Points map as p -> scaleFactor * R(rotationAngle) * (p + translation).
struct NormalizationRecord {
  int labelShift = 0;
  bool orientationReversed = false;
  double rotationAngle = 0;
  Vec2 translation = Vec2::Zero();
  double scaleFactor = 1;

  /// Input lines reordered as (A, B, C, D).
  std::array<GeneralLine, 4> relabel(const InputConfiguration& input) const;
  /// Image of a line under the recorded similarity.
  GeneralLine apply(const GeneralLine& line) const;
  /// Relabel then transform every input line.
  std::array<GeneralLine, 4> applyAll(const InputConfiguration& input) const;

  bool isIdentity() const;
};

struct Normalized {
  CanonicalConfig config;
  NormalizationRecord record;
};

/// Reduce four arbitrary lines to standard position.
///
/// Relabelings are tried in a fixed order (forward shifts 0..3, then reversed
/// shifts 0..3); the first whose C and D meet in one point not on B wins.
/// Rotation candidates are 0, the quarter turns -pi/2, pi/2, pi, then the
/// remaining multiples of pi/16 by increasing magnitude (negative first); the
/// first one leaving every slope finite with |slope| <= 1/tol is used.
Normalized normalize(const InputConfiguration& input, double tol = kDefaultTol);

/// A line of the projective plane, l1*x + l2*y + l3*z = 0, up to scale.
struct ProjectiveLine {
  double l1 = 0;
  double l2 = 0;
  double l3 = 0;

  Vec3 vec() const { return {l1, l2, l3}; }
  bool atInfinity(double tol = 1e-12) const;
  /// Direction vector of an affine line.
  Vec2 direction() const { return {-l2, l1}; }
};

struct Diagonals {
  ProjectiveLine e;  // through C∩D (the origin) and A∩B
  ProjectiveLine f;  // through A∩D and B∩C
};

Diagonals diagonals(const CanonicalConfig& cfg);

/// True iff the diagonals are perpendicular; the line at infinity counts as
/// perpendicular to every line.
bool degenerate_by_diagonals(const CanonicalConfig& cfg, double tol = kDefaultTol);

}  // namespace inscribe
