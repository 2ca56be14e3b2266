#include "inscribe/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "inscribe/solutions.hpp"

namespace inscribe {
namespace {

constexpr double kPi = std::numbers::pi;

// Deterministic sign: first component of magnitude > 1e-12 is positive.
Vec3 canonicalSign(Vec3 v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) return v[i] < 0 ? Vec3(-v) : v;
  }
  return v;
}

struct PairSlopes {
  double m1;
  double m2;
  double b;  // intercept of the first line
};

PairSlopes slopes(const CanonicalConfig& cfg, LinePair pair) {
  if (pair == LinePair::AC) return {cfg.mA, cfg.mC, cfg.bA};
  return {cfg.mB, cfg.mD, 1.0};
}

Eigen::Matrix3d psiSvdInput(const Frame& frame) { return center_map_matrix(frame); }

// Union of short arcs between cyclically consecutive angles on the circle
// (-pi, pi]; returns the uncovered arcs as (start, end) with start < end,
// where an arc crossing pi is reported with end > pi.
std::vector<std::pair<double, double>> uncoveredArcs(const std::vector<double>& angles) {
  std::vector<std::pair<double, double>> covered;
  const std::size_t n = angles.size();
  for (std::size_t k = 0; k < n; ++k) {
    double a = angles[k];
    double b = angles[(k + 1) % n];
    double delta = std::remainder(b - a, 2 * kPi);
    double lo = delta >= 0 ? a : a + delta;
    double hi = lo + std::abs(delta);
    // Normalize lo into [-pi, pi).
    while (lo < -kPi) {
      lo += 2 * kPi;
      hi += 2 * kPi;
    }
    while (lo >= kPi) {
      lo -= 2 * kPi;
      hi -= 2 * kPi;
    }
    if (hi > kPi) {
      covered.emplace_back(lo, kPi);
      covered.emplace_back(-kPi, hi - 2 * kPi);
    } else {
      covered.emplace_back(lo, hi);
    }
  }
  std::sort(covered.begin(), covered.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& arc : covered) {
    if (!merged.empty() && arc.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, arc.second);
    } else {
      merged.push_back(arc);
    }
  }
  std::vector<std::pair<double, double>> gaps;
  if (merged.empty()) return gaps;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) gaps.emplace_back(merged[k].second, merged[k + 1].first);
  // Wrap-around gap between the last arc and the first one.
  const double wrapStart = merged.back().second;
  const double wrapEnd = merged.front().first + 2 * kPi;
  if (wrapEnd > wrapStart) gaps.emplace_back(wrapStart, wrapEnd);
  return gaps;
}

// Real roots of g0 + g1 x + g2 x^2 + g3 x^3 (degree may drop).
std::vector<double> realRoots(std::array<double, 4> g) {
  const double scale = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2]), std::abs(g[3])});
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  int degree = 3;
  while (degree > 0 && std::abs(g[degree]) <= 1e-12 * scale) --degree;
  if (degree == 0) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -g[i] / g[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  for (const auto& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z.real()))) roots.push_back(z.real());
  }
  return roots;
}

}  // namespace

CenterPoint center_map(const Parallelogram& p) {
  const Vec2 c = p.center();
  return {c.x(), c.y(), p.w};
}

Eigen::Matrix3d center_map_matrix(const Frame& frame) {
  Eigen::Matrix3d m;
  m.col(0) = center_map(frame.U).vec();
  m.col(1) = center_map(frame.V).vec();
  m.col(2) = center_map(frame.T).vec();
  return m;
}

std::variant<Parallelogram, ImageDescription> invert_center_map(const Frame& frame, const CenterPoint& p,
                                                                double tol) {
  const Eigen::Matrix3d m = psiSvdInput(frame);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sigma = svd.singularValues();
  const Vec3 target = p.vec();
  if (sigma(2) > tol * sigma(0)) {
    const Vec3 c = svd.solve(target);
    return from_uvt(frame, UVT::from(c)).parallelogram;
  }

  ImageDescription image;
  double distance = 0;
  if (sigma(1) > tol * sigma(0)) {
    image.kind = ImageDescription::Kind::plane;
    image.vector = canonicalSign(svd.matrixU().col(2));
    distance = std::abs(image.vector.dot(target));
  } else {
    image.kind = ImageDescription::Kind::line;
    image.vector = canonicalSign(svd.matrixU().col(0));
    distance = (target - image.vector.dot(target) * image.vector).norm();
  }
  if (distance > tol * std::max(1.0, target.norm())) {
    throw GeometryError(ErrorCode::NotInImage, "point is not the center of any conformally inscribed parallelogram");
  }
  return image;
}

namespace {

Quadric::Factor midpointFactor(const CanonicalConfig& cfg, LinePair pair, double tol) {
  const auto [m1, m2, b] = slopes(cfg, pair);
  if (std::abs(m1 - m2) <= tol) {
    throw GeometryError(ErrorCode::ParallelPair, pair == LinePair::AC ? "A is parallel to C" : "B is parallel to D");
  }
  const long double p = m1;
  const long double q = m2;
  const long double c = b;
  Quadric::Factor f;
  f << -2 * (p + q), 4, -2 * c,  //
      -4 * p * q, 2 * (p + q), -2 * c * q;
  return f / (p - q);
}

}  // namespace

MidpointMatrix midpoint_matrix(const CanonicalConfig& cfg, LinePair pair, double tol) {
  return {midpointFactor(cfg, pair, tol).cast<double>()};
}

Quadric Quadric::centered(const Eigen::Matrix3d& q, double rhs, Space space) {
  Quadric out;
  out.space = space;
  out.form.topLeftCorner<3, 3>() = q;
  out.form(3, 3) = -rhs;
  return out;
}

double Quadric::evaluate(const Vec3& p) const {
  Eigen::Vector4d h;
  h << p, 1.0;
  return h.dot(form * h);
}

bool FlatCylinder::contains(const Vec3& p, double tol) const {
  const double offPlane = std::abs(plane.dot(p)) / plane.norm();
  return offPlane <= tol * std::max(1.0, p.norm()) && std::numbers::sqrt2 * std::abs(p.z()) * d <= 1.0 + tol;
}

CylinderSurface cylinder_surface(const CanonicalConfig& cfg, LinePair pair, double tol) {
  const auto [m1, m2, b] = slopes(cfg, pair);
  if (std::abs(m1 - m2) > tol) {
    const auto f = midpointFactor(cfg, pair, tol);
    Quadric out = Quadric::centered((f.transpose() * f).cast<double>(), 0.5, Space::xyw);
    out.factor = f;
    return out;
  }
  // Midline y = m x + (b/2) w between the parallel lines.
  const double m = 0.5 * (m1 + m2);
  FlatCylinder flat;
  flat.plane = {m, -1.0, 0.5 * b};
  flat.d = std::abs(b) / std::sqrt(1.0 + m * m);
  return flat;
}

namespace {

Vec3 orientedAxis(Vec3 kernel) {
  if (kernel.z() < 0 || (kernel.z() == 0 && canonicalSign(kernel) != kernel)) kernel = -kernel;
  return kernel;
}

PrincipalAxes axesFromFactor(const Quadric::Factor& f) {
  Eigen::JacobiSVD<Quadric::Factor> svd(f, Eigen::ComputeFullV);
  const auto sigma = svd.singularValues();
  if (!(sigma(0) > 0) || sigma(1) <= 1e-9L * sigma(0)) {
    throw GeometryError(ErrorCode::RankError, "quadric form does not have rank 2");
  }
  PrincipalAxes out;
  out.lambda2 = static_cast<double>(sigma(0) * sigma(0));
  out.lambda3 = static_cast<double>(sigma(1) * sigma(1));
  const Eigen::Matrix<long double, 3, 1> kernel = f.row(0).transpose().cross(f.row(1).transpose()).normalized();
  out.axisDirection = orientedAxis(kernel.cast<double>());
  out.axes.row(0) = out.axisDirection.transpose();
  out.axes.row(1) = svd.matrixV().col(0).transpose().cast<double>();
  out.axes.row(2) = svd.matrixV().col(1).transpose().cast<double>();
  return out;
}

}  // namespace

PrincipalAxes cylinder_principal_axes(const Quadric& quadric) {
  if (quadric.space != Space::xyw) throw GeometryError(ErrorCode::RankError, "principal axes need a cylinder-model quadric");
  if (quadric.factor) return axesFromFactor(*quadric.factor);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(quadric.q());
  const Vec3 ev = eig.eigenvalues();  // ascending
  const double top = ev(2);
  if (!(top > 0) || std::abs(ev(0)) > 1e-9 * top || ev(1) <= 1e-9 * top) {
    throw GeometryError(ErrorCode::RankError, "quadric form does not have rank 2");
  }
  PrincipalAxes out;
  out.lambda2 = ev(2);
  out.lambda3 = ev(1);
  out.axisDirection = orientedAxis(eig.eigenvectors().col(0));
  out.axes.row(0) = out.axisDirection.transpose();
  out.axes.row(1) = eig.eigenvectors().col(2).transpose();
  out.axes.row(2) = eig.eigenvectors().col(1).transpose();
  return out;
}

double cross_section_area(const Quadric& quadric) {
  cylinder_principal_axes(quadric);  // rank check
  if (quadric.factor) {
    // det N = det(M1)^2 for the (x, y) block M1 of the factor.
    const long double det = quadric.factor->leftCols<2>().determinant();
    return static_cast<double>(std::numbers::pi_v<long double> * quadric.rhs() / std::abs(det));
  }
  const Eigen::Matrix2d n = quadric.q().topLeftCorner<2, 2>();
  const double det = n.determinant();
  if (!(det > 0)) throw GeometryError(ErrorCode::RankError, "horizontal cross sections are not ellipses");
  return kPi * quadric.rhs() / std::sqrt(det);
}

Quadric cone_surface(const CanonicalConfig& cfg, LinePair pair, double tol) {
  const auto f = midpointFactor(cfg, pair, tol);
  const Eigen::Matrix<double, 2, 3> m = f.cast<double>();
  const Eigen::Matrix2d m1 = m.leftCols<2>();
  const Vec2 m3 = m.col(2);
  Quadric out;
  out.space = Space::xyz;
  out.form.topLeftCorner<2, 2>() = m1.transpose() * m1;
  out.form(2, 2) = -4.0;
  const Vec2 lin = m1.transpose() * m3;
  out.form(0, 3) = out.form(3, 0) = lin.x();
  out.form(1, 3) = out.form(3, 1) = lin.y();
  out.form(3, 3) = m3.squaredNorm();
  out.factor = f;
  return out;
}

Eigen::Vector4d projective_swap(const Eigen::Vector4d& p) {
  if (p.isZero(0.0)) throw GeometryError(ErrorCode::ZeroVector, "the zero vector is not a projective point");
  return {p(0), p(1), p(3), p(2)};
}

Quadric projective_swap(const Quadric& quadric) {
  Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
  perm(0, 0) = perm(1, 1) = 1.0;
  perm(2, 3) = perm(3, 2) = 1.0;
  Quadric out;
  out.form = perm * quadric.form * perm;
  out.factor = quadric.factor;
  out.space = quadric.space == Space::xyw ? Space::xyz : Space::xyw;
  return out;
}

std::optional<Vec3> projective_swap_point(const Vec3& p) {
  Eigen::Vector4d h;
  h << p, 1.0;
  const Eigen::Vector4d s = projective_swap(h);
  if (s(3) == 0.0) return std::nullopt;
  return Vec3(s.head<3>() / s(3));
}

double Conic::evaluate(const Vec2& p) const {
  const Vec3 h(p.x(), p.y(), 1.0);
  return h.dot(c * h);
}

std::string_view to_string(LocusKind kind) {
  switch (kind) {
    case LocusKind::hyperbola: return "hyperbola";
    case LocusKind::linePair: return "linePair";
    case LocusKind::line: return "line";
    case LocusKind::lineMinusSegment: return "lineMinusSegment";
    case LocusKind::point: return "point";
    case LocusKind::other: return "other";
  }
  return "other";
}

LocusReport locus(const CanonicalConfig& cfg, const Frame& frame, double tol) {
  LocusReport report;
  report.degenerate = frame.degenerate;

  constexpr int kReportSamples = 64;
  for (const auto& s : sample_solution(frame, kReportSamples)) {
    const auto projected = project_to_C(frame, s, 1e-9);
    if (const auto* r = std::get_if<Parallelogram>(&projected)) report.samples.push_back(center_map(*r));
  }

  if (!cfg.anyParallel(tol)) {
    using Form = Eigen::Matrix<long double, 3, 3>;
    const auto fAC = midpointFactor(cfg, LinePair::AC, tol);
    const auto fBD = midpointFactor(cfg, LinePair::BD, tol);
    const Form qAC = fAC.transpose() * fAC;
    const Form qBD = fBD.transpose() * fBD;
    const Form diff = qAC - qBD;
    const Form sum = qAC + qBD;
    Conic conic{diff.cast<double>()};
    report.conic = conic;

    // Determinants relative to those of the sum of the two forms; both ratios
    // are unchanged by affine coordinate changes and by scaling either line
    // pair's midpoint matrix, unlike a max-coefficient normalization.
    const double detC = static_cast<double>(diff.determinant() / sum.determinant());
    const double detN =
        static_cast<double>(diff.topLeftCorner<2, 2>().determinant() / sum.topLeftCorner<2, 2>().determinant());
    const Eigen::Matrix3d cn = conic.c / conic.magnitude();
    const Eigen::Matrix2d n = cn.topLeftCorner<2, 2>();
    constexpr double eps = 1e-9;

    if (std::abs(detC) > eps) {
      report.kind = detN < -eps ? LocusKind::hyperbola : LocusKind::other;
    } else if (detN < -eps) {
      report.kind = LocusKind::linePair;
      using Block = Eigen::Matrix<long double, 2, 2>;
      using Vec2L = Eigen::Matrix<long double, 2, 1>;
      const Block nl = diff.topLeftCorner<2, 2>();
      const Vec2 apex = nl.fullPivLu().solve(Vec2L(-diff.topRightCorner<2, 1>())).cast<double>();
      Eigen::SelfAdjointEigenSolver<Block> eig(nl / nl.cwiseAbs().maxCoeff());
      const long double neg = eig.eigenvalues()(0);
      const long double pos = eig.eigenvalues()(1);
      for (double sign : {1.0, -1.0}) {
        const Vec2 dir = (eig.eigenvectors() * Vec2L(std::sqrt(pos), sign * std::sqrt(-neg))).cast<double>();
        const Vec2 normal(-dir.y(), dir.x());
        const Vec3 l = canonicalSign(Vec3(normal.x(), normal.y(), -normal.dot(apex)) / normal.norm());
        report.lines.push_back({l.x() + 0.0, l.y() + 0.0, l.z() + 0.0});
      }
      std::sort(report.lines.begin(), report.lines.end(), [](const ProjectiveLine& a, const ProjectiveLine& b) {
        return std::atan2(a.l2, a.l1) < std::atan2(b.l2, b.l1);
      });
    } else if (n.norm() <= eps) {
      report.kind = LocusKind::line;
      const Vec3 l = canonicalSign(Vec3(cn(0, 2), cn(1, 2), 0.5 * cn(2, 2)));
      report.lines.push_back({l.x(), l.y(), l.z()});
    } else {
      report.kind = LocusKind::other;
    }
    return report;
  }

  if (cfg.acParallel(tol) && cfg.bdParallel(tol)) {
    report.kind = LocusKind::point;
    return report;
  }

  // Exactly one pair parallel: centers at w = 1 lie on that pair's midline.
  const bool ac = cfg.acParallel(tol);
  const double slope = ac ? 0.5 * (cfg.mA + cfg.mC) : 0.5 * (cfg.mB + cfg.mD);
  const Vec2 origin(0.0, ac ? 0.5 * cfg.bA : 0.5);
  const Vec2 dir = Vec2(1.0, slope).normalized();

  constexpr int kFlowSamples = 4096;
  std::vector<double> angles;
  angles.reserve(kFlowSamples);
  double minParam = std::numeric_limits<double>::infinity();
  double maxParam = -minParam;
  for (const auto& s : sample_solution(frame, kFlowSamples)) {
    const auto projected = project_to_C(frame, s, 1e-12);
    if (const auto* r = std::get_if<Parallelogram>(&projected)) {
      const double param = (r->center() - origin).dot(dir);
      minParam = std::min(minParam, param);
      maxParam = std::max(maxParam, param);
      angles.push_back(2.0 * std::atan(param));
    } else {
      angles.push_back(kPi);
    }
  }
  if (maxParam - minParam <= 1e-9 * std::max(1.0, std::abs(maxParam))) {
    report.kind = LocusKind::point;
    return report;
  }

  std::vector<std::pair<double, double>> gaps;
  for (const auto& g : uncoveredArcs(angles)) {
    if (g.second - g.first > 1e-3) gaps.push_back(g);
  }
  if (gaps.empty()) {
    report.kind = LocusKind::line;
  } else if (gaps.size() == 1 && gaps.front().second < kPi) {
    report.kind = LocusKind::lineMinusSegment;
    report.missingSegment = {std::tan(0.5 * gaps.front().first), std::tan(0.5 * gaps.front().second)};
  } else {
    report.kind = LocusKind::other;
  }
  const Vec3 midline = canonicalSign(Vec3(-dir.y(), dir.x(), -Vec2(-dir.y(), dir.x()).dot(origin)));
  report.lines.push_back({midline.x(), midline.y(), midline.z()});
  return report;
}

std::vector<UVT> unit_rectangles_sharing_center(const Frame& frame, const UVT& c, double tol) {
  const Eigen::Matrix3d m = center_map_matrix(frame);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
  const Vec3 sigma = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < 3; ++i) rank += sigma(i) > 1e-9 * sigma(0) ? 1 : 0;

  std::vector<UVT> out{c};
  auto onCurve = [&](const Vec3& p) {
    const auto r = residuals(frame, UVT::from(p));
    return std::abs(r.cylAC) <= tol && std::abs(r.cylBD) <= tol;
  };
  auto addUnique = [&](const Vec3& p) {
    if (!onCurve(p)) return;
    for (const auto& q : out) {
      if ((q.vec() - p).norm() <= 1e-7) return;
    }
    out.push_back(UVT::from(p));
  };

  // Each cylinder restricted to c + K (K = kernel of the center map) is
  // Q_i(k) + L_i(k) = 0 with Q_i quadratic and L_i linear, since c is on it.
  const Vec3 base = c.vec();
  const Eigen::Matrix3d qBD = Vec3(2.0, 0.0, 2.0 * frame.mu).asDiagonal();
  const Eigen::Matrix3d qAC = Vec3(0.0, 2.0, 2.0 * frame.lambda).asDiagonal();
  auto quad = [&](const Eigen::Matrix3d& q, const Vec3& a, const Vec3& b) { return a.dot(q * b); };

  if (rank == 2) {
    const Vec3 k = svd.matrixV().col(2);
    for (const auto* q : {&qBD, &qAC}) {
      const double a = quad(*q, k, k);
      const double b = 2.0 * quad(*q, base, k);
      if (std::abs(a) > 1e-12) addUnique(base - (b / a) * k);
    }
  } else if (rank == 1) {
    const Vec3 k1 = svd.matrixV().col(1);
    const Vec3 k2 = svd.matrixV().col(2);
    struct Restricted {
      double ss, sr, rr, ls, lr;
    };
    auto restrict = [&](const Eigen::Matrix3d& q) {
      return Restricted{quad(q, k1, k1), 2.0 * quad(q, k1, k2), quad(q, k2, k2), 2.0 * quad(q, base, k1),
                        2.0 * quad(q, base, k2)};
    };
    const Restricted e1 = restrict(qBD);
    const Restricted e2 = restrict(qAC);
    // Directions (s, r) along which both restricted equations share a
    // nonzero root: L1 Q2 - L2 Q1 = 0, a binary cubic.
    auto cubic = [](const Restricted& l, const Restricted& q) {
      return std::array<double, 4>{l.ls * q.ss, l.ls * q.sr + l.lr * q.ss, l.ls * q.rr + l.lr * q.sr, l.lr * q.rr};
    };
    const auto a = cubic(e1, e2);
    const auto b = cubic(e2, e1);
    const std::array<double, 4> g{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    std::vector<Vec2> directions;
    for (double tau : realRoots(g)) directions.push_back(Vec2(1.0, tau).normalized());
    const double gScale = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2]), std::abs(g[3])});
    if (std::abs(g[3]) <= 1e-12 * gScale) directions.push_back(Vec2(0.0, 1.0));
    for (const Vec2& d : directions) {
      for (const Restricted* e : {&e1, &e2}) {
        const double qd = e->ss * d.x() * d.x() + e->sr * d.x() * d.y() + e->rr * d.y() * d.y();
        const double ld = e->ls * d.x() + e->lr * d.y();
        if (std::abs(qd) > 1e-12) {
          const double rho = -ld / qd;
          addUnique(base + rho * (d.x() * k1 + d.y() * k2));
        }
      }
    }
  }
  return out;
}

}  // namespace inscribe
