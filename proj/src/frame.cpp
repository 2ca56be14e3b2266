#include "inscribe/frame.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/QR>

#include "inscribe/models.hpp"

namespace inscribe {
namespace {

Parallelogram normalized(const Parallelogram& p) { return (1.0 / norm(p)) * p; }

// Sign convention for T: wT >= 0; when T is at infinity, the first nonzero
// diagonal component is positive.
bool needsFlip(const Parallelogram& t) {
  constexpr double tie = 1e-12;
  if (std::abs(t.w) > tie) return t.w < 0;
  const auto d = diagonal_vectors(t);
  for (double c : {d.dAC.x(), d.dAC.y(), d.dBD.x(), d.dBD.y()}) {
    if (std::abs(c) > tie) return c < 0;
  }
  return false;
}

}  // namespace

Frame build_frame(const CanonicalConfig& cfg, double tol) {
  cfg.validate();
  const double mAC = cfg.mAC();
  const double mBD = cfg.mBD();
  const double mCD = cfg.mCD();
  const double bA = cfg.bA;

  Vec3 uParams;
  Vec3 vParams;
  if (!cfg.anyParallel(tol)) {
    uParams = {-bA / mAC, -(2.0 * bA * mCD + mAC) / (mAC * mBD), 1.0};
    vParams = {-(bA * mBD - 2.0 * mCD) / (mBD * mAC), -1.0 / mBD, 1.0};
  } else {
    uParams = {mBD / (2.0 * mCD), 1.0, 0.0};
    if (cfg.acParallel(tol)) {
      vParams = {1.0, 0.0, 0.0};
    } else {
      vParams = {-2.0 * mCD / mAC, 1.0, 0.0};
    }
  }

  Frame f;
  f.config = cfg;
  f.U = normalized(from_params(cfg, uParams));
  f.V = normalized(from_params(cfg, vParams));

  // Orthogonal complement of span(U, V) under the pulled-back inner product
  // G = J^T J = R^T R. In the coordinates y = R p the product is Euclidean,
  // so the complement is a cross product there; working with R instead of G
  // avoids squaring the condition number of J.
  const Eigen::Matrix3d r =
      diagonal_jacobian(cfg).householderQr().matrixQR().topRows<3>().triangularView<Eigen::Upper>();
  const Vec3 y = (r * params_of(f.U)).cross(r * params_of(f.V));
  const Vec3 tParams = r.triangularView<Eigen::Upper>().solve(y);
  f.T = normalized(from_params(cfg, tParams));
  if (needsFlip(f.T)) f.T *= -1.0;

  const auto dT = diagonal_vectors(f.T);
  f.lambda = dT.dAC.squaredNorm();
  f.mu = dT.dBD.squaredNorm();
  f.wU = f.U.w;
  f.wV = f.V.w;
  f.wT = f.T.w;
  f.degenerate = std::abs(f.lambda - f.mu) <= tol;
  return f;
}

UVT uvt_of(const Frame& frame, const Parallelogram& p) {
  return {inner(p, frame.U), inner(p, frame.V), inner(p, frame.T)};
}

ScaledParallelogram from_uvt(const Frame& frame, const UVT& c) {
  const Parallelogram p = c.u * frame.U + c.v * frame.V + c.t * frame.T;
  return {p, c.u * frame.wU + c.v * frame.wV + c.t * frame.wT};
}

Eigen::Matrix<double, 4, 3> diagonal_matrix(const Frame& frame) {
  Eigen::Matrix<double, 4, 3> m;
  int k = 0;
  for (const auto* p : {&frame.U, &frame.V, &frame.T}) {
    const auto d = diagonal_vectors(*p);
    m.col(k++) << d.dAC, d.dBD;
  }
  return m;
}

Parallelogram from_diagonals(const Frame& frame, const DiagonalPair& d, double tol) {
  const Eigen::Matrix<double, 4, 3> m = diagonal_matrix(frame);
  Eigen::Vector4d rhs;
  rhs << d.dAC, d.dBD;
  const Vec3 c = m.colPivHouseholderQr().solve(rhs);
  const double residual = (m * c - rhs).norm();
  if (residual > tol) {
    throw GeometryError(ErrorCode::NotInImage,
                        "diagonal vectors are not those of a conformally inscribed parallelogram (residual " +
                            std::to_string(residual) + ")");
  }
  return from_uvt(frame, UVT::from(c)).parallelogram;
}

MedianCheck median_center_check(const CanonicalConfig& cfg, const Frame& frame, double tol) {
  if (cfg.anyParallel()) {
    throw GeometryError(ErrorCode::NotApplicable, "median lines need both pairs of opposite lines non-parallel");
  }
  // A chord with midpoint (x, y) on C(1) has diagonal M (x, y, 1); the chord is
  // perpendicular to a direction n iff n . M (x, y, 1) = 0, a line in (x, y).
  const auto mAC = midpoint_matrix(cfg, LinePair::AC).m;
  const auto mBD = midpoint_matrix(cfg, LinePair::BD).m;
  const Vec3 medianAC = mAC.transpose() * diagonal_vectors(frame.V).dAC;
  const Vec3 medianBD = mBD.transpose() * diagonal_vectors(frame.U).dBD;
  const Vec3 meet = medianAC.cross(medianBD);

  MedianCheck out;
  if (std::abs(meet.z()) <= tol * meet.head<2>().norm()) {
    out.center = AtInfinity{};
    out.consistent = std::abs(frame.wT) <= tol;
    return out;
  }
  const Vec2 center = meet.head<2>() / meet.z();
  out.center = center;
  if (std::abs(frame.wT) > tol) {
    const Vec2 expected = frame.T.center() / frame.wT;
    out.consistent = (expected - center).norm() <= tol * std::max(1.0, center.norm());
  }
  return out;
}

}  // namespace inscribe
