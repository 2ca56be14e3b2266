#pragma once

#include <variant>

#include "inscribe/parallelogram.hpp"

namespace inscribe {

/// Marker for objects that live at scale zero (the configuration seen from
/// infinity) and have no finite counterpart in C itself.
struct AtInfinity {
  bool operator==(const AtInfinity&) const = default;
};

/// Coordinates with respect to the orthonormal basis U, V, T.
struct UVT {
  double u = 0;
  double v = 0;
  double t = 0;

  Vec3 vec() const { return {u, v, t}; }
  static UVT from(const Vec3& c) { return {c.x(), c.y(), c.z()}; }
  UVT operator-() const { return {-u, -v, -t}; }
  UVT operator+(const UVT& o) const { return {u + o.u, v + o.v, t + o.t}; }
  double squaredNorm() const { return u * u + v * v + t * t; }
};

/// Orthonormal basis of the parallelogram space.
///
/// U and V are degenerate: U has zero AC diagonal, V has zero BD diagonal.
/// T completes the basis; lambda and mu are the squared lengths of its AC and
/// BD diagonals (lambda + mu = 1). The configuration is degenerate exactly
/// when lambda == mu.
struct Frame {
  CanonicalConfig config;
  Parallelogram U;
  Parallelogram V;
  Parallelogram T;
  double lambda = 0;
  double mu = 0;
  double wU = 0;
  double wV = 0;
  double wT = 0;
  bool degenerate = false;
};

/// U and V follow the closed forms for the non-parallel and parallel cases;
/// T spans the orthogonal complement, signed so wT >= 0 (ties broken by the
/// first nonzero component of T's AC diagonal, then its BD diagonal, being
/// positive).
Frame build_frame(const CanonicalConfig& cfg, double tol = kDefaultTol);

UVT uvt_of(const Frame& frame, const Parallelogram& p);

struct ScaledParallelogram {
  Parallelogram parallelogram;
  double scale = 0;
};

/// u U + v V + t T together with its scale u wU + v wV + t wT.
ScaledParallelogram from_uvt(const Frame& frame, const UVT& c);

/// The unique parallelogram with the given diagonal vectors. Throws
/// NotInImage when the least-squares residual exceeds tol.
Parallelogram from_diagonals(const Frame& frame, const DiagonalPair& d, double tol = kDefaultTol);

/// 4x3 matrix whose columns are (X_AC, X_BD) for X = U, V, T.
Eigen::Matrix<double, 4, 3> diagonal_matrix(const Frame& frame);

struct MedianCheck {
  std::variant<Vec2, AtInfinity> center;
  bool consistent = false;
};

/// Intersects the median line of A, C chords perpendicular to V with the
/// median line of B, D chords perpendicular to U. Their common point is the
/// center of T rescaled into C; parallel medians mean T is at infinity.
/// Throws NotApplicable when a pair of opposite lines is parallel.
MedianCheck median_center_check(const CanonicalConfig& cfg, const Frame& frame, double tol = 1e-7);

}  // namespace inscribe
