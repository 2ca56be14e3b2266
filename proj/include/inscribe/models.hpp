#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "inscribe/frame.hpp"

namespace inscribe {

enum class LinePair { AC, BD };

/// Image of a parallelogram under the center map: its center and its scale.
struct CenterPoint {
  double x = 0;
  double y = 0;
  double w = 0;

  Vec3 vec() const { return {x, y, w}; }
};

CenterPoint center_map(const Parallelogram& p);

/// 3x3 matrix taking (u, v, t) to (x, y, w). Invertible iff neither pair of
/// opposite lines is parallel.
Eigen::Matrix3d center_map_matrix(const Frame& frame);

/// Image of a singular center map: a plane through the origin (normal
/// vector) when one pair is parallel, a line (direction) when both are.
struct ImageDescription {
  enum class Kind { plane, line };
  Kind kind = Kind::plane;
  Vec3 vector = Vec3::Zero();
};

/// The parallelogram with the given center and scale, or the description of
/// the image when the center map is singular (sigma_min <= tol sigma_max).
/// Throws NotInImage when singular and p is farther than tol from the image.
std::variant<Parallelogram, ImageDescription> invert_center_map(const Frame& frame, const CenterPoint& p,
                                                                double tol = kDefaultTol);

/// M with M (x, y, w) = (xA - xC, yA - yC) for the chord between A(w) and
/// C(w) whose midpoint is (x, y); likewise for B, D.
struct MidpointMatrix {
  Eigen::Matrix<double, 2, 3> m;
};

/// Throws ParallelPair when the pair's slopes agree within tol.
MidpointMatrix midpoint_matrix(const CanonicalConfig& cfg, LinePair pair, double tol = kDefaultTol);

enum class Space { xyw, xyz };

/// Quadric surface p^T A p + 2 b.p + c = 0 in affine coordinates, stored as
/// the 4x4 homogeneous form [[A, b], [b^T, c]]. The third coordinate is the
/// scale w (cylinder model) or the half chord length z (cone model).
struct Quadric {
  using Factor = Eigen::Matrix<long double, 2, 3>;

  Eigen::Matrix4d form = Eigen::Matrix4d::Zero();
  Space space = Space::xyw;
  /// Midpoint matrix M with q = M^T M, when the quadric was built from a line
  /// pair. Kept in extended precision; axes and areas are computed from it.
  std::optional<Factor> factor;

  /// Central quadric p^T q p = rhs.
  static Quadric centered(const Eigen::Matrix3d& q, double rhs, Space space);

  Eigen::Matrix3d q() const { return form.topLeftCorner<3, 3>(); }
  double rhs() const { return -form(3, 3); }
  double evaluate(const Vec3& p) const;
};

/// Points of the plane a x + b y + c w = 0 with sqrt(2) |w| d <= 1.
struct FlatCylinder {
  Vec3 plane = Vec3::Zero();
  double d = 0;

  bool contains(const Vec3& p, double tol = 1e-9) const;
};

using CylinderSurface = std::variant<Quadric, FlatCylinder>;

/// The AC (or BD) cylinder: centers (x, y, w) of chords of squared length
/// 1/2 between A(w) and C(w). Elliptical for a non-parallel pair, flat
/// otherwise.
CylinderSurface cylinder_surface(const CanonicalConfig& cfg, LinePair pair, double tol = kDefaultTol);

struct PrincipalAxes {
  double lambda2 = 0;  // larger nonzero eigenvalue
  double lambda3 = 0;
  /// Rows: kernel direction, then the eigenvectors for lambda2 and lambda3,
  /// so that q = axes^T diag(0, lambda2, lambda3) axes.
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
  Vec3 axisDirection = Vec3::Zero();
};

/// Throws RankError unless q has exactly one zero eigenvalue. With a factor
/// the test is sigma_2 > 1e-9 sigma_1 on its singular values, otherwise
/// lambda_3 > 1e-9 lambda_2 on the eigenvalues of q.
PrincipalAxes cylinder_principal_axes(const Quadric& quadric);

/// Area of the horizontal elliptical cross section; pi/8 for every
/// non-parallel pair.
double cross_section_area(const Quadric& quadric);

/// The AC (or BD) cone |M (x, y, 1)|^2 = 4 z^2 in the cone model.
/// Throws ParallelPair for a parallel pair.
Quadric cone_surface(const CanonicalConfig& cfg, LinePair pair, double tol = kDefaultTol);

/// [x:y:z:w] -> [x:y:w:z]. Throws ZeroVector.
Eigen::Vector4d projective_swap(const Eigen::Vector4d& p);

/// The same exchange applied to a quadric's homogeneous form; cone-model
/// surfaces become cylinder-model surfaces and back.
Quadric projective_swap(const Quadric& quadric);

/// Affine point p -> swap([p : 1]) dehomogenized; nullopt when it lands on
/// the plane at infinity.
std::optional<Vec3> projective_swap_point(const Vec3& p);

/// Planar conic X^T c X = 0 with X = (x, y, 1).
struct Conic {
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();

  double evaluate(const Vec2& p) const;
  /// Largest absolute coefficient.
  double magnitude() const { return c.cwiseAbs().maxCoeff(); }
};

enum class LocusKind { hyperbola, linePair, line, lineMinusSegment, point, other };

std::string_view to_string(LocusKind kind);

struct LocusReport {
  LocusKind kind = LocusKind::other;
  std::optional<Conic> conic;
  /// Component lines for linePair (and the finite line of a linear conic).
  std::vector<ProjectiveLine> lines;
  /// Missing open segment, as parameters along the midline, for lineMinusSegment.
  std::optional<std::pair<double, double>> missingSegment;
  std::vector<CenterPoint> samples;
  bool degenerate = false;
};

/// Classifies the set of centers of rectangles inscribed in C.
LocusReport locus(const CanonicalConfig& cfg, const Frame& frame, double tol = kDefaultTol);

/// All unit rectangles whose cylinder-model center equals that of c (c
/// included). At most 1, 2 or 4 of them for zero, one or two parallel pairs.
std::vector<UVT> unit_rectangles_sharing_center(const Frame& frame, const UVT& c, double tol = 1e-8);

}  // namespace inscribe
