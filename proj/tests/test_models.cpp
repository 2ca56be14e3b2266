#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <random>

#include "inscribe/models.hpp"
#include "inscribe/solutions.hpp"
#include "support.hpp"

namespace inscribe {
namespace {

constexpr double kPi = std::numbers::pi;
const CanonicalConfig kS{0, -1, 0, 1, -1};
const CanonicalConfig kN{2, 1, -1, 0.5, -2};
const CanonicalConfig kQ{1, 2, 0, 1, -1};

double lineAngle(const Vec3& a, const Vec3& b) {
  return std::asin(std::min(1.0, a.normalized().cross(b.normalized()).norm()));
}

// Chord between y = m1 x + b1 w and y = m2 x + b2 w with midpoint (x, y),
// solved directly from the two incidence equations.
Vec2 chordDifference(double m1, double b1, double m2, double b2, const Vec3& p) {
  Eigen::Matrix2d a;
  a << 1, 1, m1, m2;
  const Vec2 sr = a.fullPivLu().solve(Vec2(2 * p.x(), 2 * p.y() - (b1 + b2) * p.z()));
  const Vec2 first(sr.x(), m1 * sr.x() + b1 * p.z());
  const Vec2 second(sr.y(), m2 * sr.y() + b2 * p.z());
  return first - second;
}

Vec2 meet(double m1, double b1, double m2, double b2) {
  const double x = (b2 - b1) / (m1 - m2);
  return {x, m1 * x + b1};
}

TEST(CenterMap, Examples) {
  EXPECT_EQ(center_map(Parallelogram{}).vec(), Vec3::Zero());
  const auto c = center_map(from_params(kS, 2, 2, 1));
  EXPECT_NEAR(c.x, 1.5, 1e-15);
  EXPECT_NEAR(c.y, 0.0, 1e-15);
  EXPECT_EQ(c.w, 1.0);
  const Frame s = build_frame(kS);
  const double r = 1 / std::sqrt(80.0);
  EXPECT_LT((center_map(s.U).vec() - Vec3(-r, -r, r)).norm(), 1e-15);
  EXPECT_EQ(center_map_matrix(s) * Vec3::UnitX(), center_map(s.U).vec());
}

TEST(CenterMap, InvertibilityFollowsParallelism) {
  EXPECT_GT(std::abs(center_map_matrix(build_frame(kS)).determinant()), 1e-3);
  const Frame q = build_frame(kQ);
  const auto image = invert_center_map(q, {0.3, 1.0, 0.7});
  ASSERT_TRUE(std::holds_alternative<ImageDescription>(image));
  const auto& d = std::get<ImageDescription>(image);
  EXPECT_EQ(d.kind, ImageDescription::Kind::plane);
  EXPECT_LT(lineAngle(d.vector, Vec3(-1, 1, -1)), 1e-8);
  try {
    invert_center_map(q, {0, 1, 0});
    ADD_FAILURE() << "expected NotInImage";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInImage);
  }
}

TEST(CenterMap, InverseRecoversTheRectangle) {
  const Frame s = build_frame(kS);
  const auto back = invert_center_map(s, {1.5, 0, 1});
  ASSERT_TRUE(std::holds_alternative<Parallelogram>(back));
  EXPECT_LT((vertex_tuple(std::get<Parallelogram>(back)) - vertex_tuple(std::sqrt(10.0) * s.T)).norm(), 1e-12);
}

TEST(CenterMap, BothPairsParallelGiveALine) {
  const CanonicalConfig c{1, 2, -1, 1, -1};
  const Frame f = build_frame(c);
  const Vec3 p = center_map(f.T).vec();
  const auto image = invert_center_map(f, {2 * p.x(), 2 * p.y(), 2 * p.z()});
  ASSERT_TRUE(std::holds_alternative<ImageDescription>(image));
  const auto& d = std::get<ImageDescription>(image);
  EXPECT_EQ(d.kind, ImageDescription::Kind::line);
  EXPECT_LT(lineAngle(d.vector, p), 1e-9);
}

TEST(MidpointMatrix, FixtureS) {
  Eigen::Matrix<double, 2, 3> ac;
  ac << 2, -4, -2, 0, -2, -2;
  Eigen::Matrix<double, 2, 3> bd;
  bd << 2, 4, -2, 0, -2, 2;
  EXPECT_LT((midpoint_matrix(kS, LinePair::AC).m - ac).norm(), 1e-15);
  EXPECT_LT((midpoint_matrix(kS, LinePair::BD).m - bd).norm(), 1e-15);
  EXPECT_LT((ac * Vec3(1.5, 0, 1) - Vec2(1, -2)).norm(), 1e-15);
  EXPECT_LT((bd * Vec3(1.5, 0, 1) - Vec2(1, 2)).norm(), 1e-15);
  EXPECT_THROW(midpoint_matrix(kQ, LinePair::AC), GeometryError);
}

TEST(MidpointMatrix, MatchesChordsSolvedDirectly) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = testing::random_config(rng);
    const Vec3 p(u(rng), u(rng), u(rng));
    const Vec2 dAC = chordDifference(c.mA, c.bA, c.mC, 0, p);
    const Vec2 dBD = chordDifference(c.mB, 1, c.mD, 0, p);
    const double scale = 1 + dAC.norm() + dBD.norm();
    ASSERT_LT((midpoint_matrix(c, LinePair::AC).m * p - dAC).norm(), 1e-9 * scale) << trial;
    ASSERT_LT((midpoint_matrix(c, LinePair::BD).m * p - dBD).norm(), 1e-9 * scale) << trial;
  }
}

TEST(Cylinder, FixtureSQuadric) {
  const auto surface = cylinder_surface(kS, LinePair::AC);
  ASSERT_TRUE(std::holds_alternative<Quadric>(surface));
  const auto& q = std::get<Quadric>(surface);
  Eigen::Matrix3d expected;
  expected << 4, -8, -4, -8, 20, 12, -4, 12, 8;
  EXPECT_LT((q.q() - expected).norm(), 1e-13);
  EXPECT_EQ(q.rhs(), 0.5);
  EXPECT_LT((q.q() * Vec3(-1, -1, 1)).norm(), 1e-13);
  EXPECT_NEAR(cross_section_area(q), kPi / 8, 1e-15);
}

TEST(Cylinder, FixtureQIsFlat) {
  const auto surface = cylinder_surface(kQ, LinePair::AC);
  ASSERT_TRUE(std::holds_alternative<FlatCylinder>(surface));
  const auto& flat = std::get<FlatCylinder>(surface);
  EXPECT_LT(lineAngle(flat.plane, Vec3(-1, 1, -1)), 1e-15);
  EXPECT_NEAR(flat.d, std::numbers::sqrt2, 1e-15);
  EXPECT_TRUE(flat.contains({0.1, 0.6, 0.5}));
  EXPECT_FALSE(flat.contains({0.1, 0.61, 0.51}));
  EXPECT_FALSE(flat.contains({0.0, 1.0, 0.0}));
  // B ∥ D: d = 1 / sqrt(1 + mB^2).
  const auto bd = cylinder_surface(CanonicalConfig{2, 1, 0.5, 1, 0.5}, LinePair::BD);
  EXPECT_NEAR(std::get<FlatCylinder>(bd).d, 1 / std::sqrt(1.25), 1e-15);
}

TEST(Cylinder, PerpendicularPairThroughTheOriginHasCircularSections) {
  const CanonicalConfig c{1, 0, 3, -1, 2};  // A: y = x, C: y = -x
  const auto q = std::get<Quadric>(cylinder_surface(c, LinePair::AC));
  const Eigen::Matrix2d n = q.q().topLeftCorner<2, 2>();
  EXPECT_LT((n - 4 * Eigen::Matrix2d::Identity()).norm(), 1e-14);  // radius 1/(2 sqrt 2)
  EXPECT_NEAR(cross_section_area(q), kPi / 8, 1e-15);
}

TEST(PrincipalAxes, FixtureS) {
  const auto q = std::get<Quadric>(cylinder_surface(kS, LinePair::AC));
  const auto axes = cylinder_principal_axes(q);
  EXPECT_LT(lineAngle(axes.axisDirection, Vec3(-1, -1, 1)), 1e-12);
  const Eigen::Matrix3d m = q.q();
  const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                        m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  EXPECT_NEAR(axes.lambda2 * axes.lambda3, minors, 1e-10 * minors);
  EXPECT_GE(axes.lambda2, axes.lambda3);
  const Eigen::Matrix3d rebuilt = axes.axes.transpose() * Vec3(0, axes.lambda2, axes.lambda3).asDiagonal() * axes.axes;
  EXPECT_LT((rebuilt - m).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PrincipalAxes, RejectsFullRank) {
  const Quadric q = Quadric::centered(Eigen::Matrix3d::Identity(), 1.0, Space::xyw);
  try {
    cylinder_principal_axes(q);
    ADD_FAILURE() << "expected RankError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankError);
  }
}

TEST(Cone, FixtureS) {
  const Quadric cone = cone_surface(kS, LinePair::AC);
  EXPECT_EQ(cone.space, Space::xyz);
  const double z = std::sqrt(5.0) / 2;
  EXPECT_NEAR(cone.evaluate({1.5, 0, z}), 0.0, 1e-13);
  EXPECT_NEAR(cone.evaluate({1.5, 0, -z}), 0.0, 1e-13);
  EXPECT_NEAR(cone.evaluate({-1, -1, 0}), 0.0, 1e-13);
  EXPECT_GT(std::abs(cone.evaluate({-1, -0.9, 0})), 1e-3);
  EXPECT_THROW(cone_surface(kQ, LinePair::AC), GeometryError);
}

TEST(ProjectiveSwap, PointsAndInvolution) {
  EXPECT_EQ(projective_swap(Eigen::Vector4d(1, 2, 3, 4)), Eigen::Vector4d(1, 2, 4, 3));
  const Eigen::Vector4d p(0.3, -1.7, 2.5, 0.25);
  EXPECT_EQ(projective_swap(projective_swap(p)), p);
  EXPECT_THROW(projective_swap(Eigen::Vector4d::Zero()), GeometryError);
  EXPECT_FALSE(projective_swap_point({1, 2, 0}).has_value());
  const auto fixed = projective_swap_point({0.4, 0.9, 1});
  ASSERT_TRUE(fixed.has_value());
  EXPECT_EQ(*fixed, Vec3(0.4, 0.9, 1));
}

TEST(ProjectiveSwap, ConeBecomesScaledCylinder) {
  const Quadric cone = cone_surface(kS, LinePair::AC);
  const Quadric swapped = projective_swap(cone);
  EXPECT_EQ(swapped.space, Space::xyw);
  const Quadric cylinder = std::get<Quadric>(cylinder_surface(kS, LinePair::AC));
  // The swapped cone meets the cylinder chart after scaling points by
  // 1/(2 sqrt 2), i.e. the homogeneous coordinate by 2 sqrt 2.
  const Eigen::Matrix4d d = Eigen::Vector4d(1, 1, 1, 1 / (2 * std::numbers::sqrt2)).asDiagonal();
  EXPECT_LT((d * swapped.form * d - cylinder.form).norm(), 1e-12);
  EXPECT_EQ(projective_swap(swapped).form, cone.form);
}

TEST(Locus, FixtureSLinePair) {
  const Frame f = build_frame(kS);
  const auto report = locus(kS, f);
  EXPECT_EQ(report.kind, LocusKind::linePair);
  ASSERT_TRUE(report.conic.has_value());
  Eigen::Matrix3d expected;  // 16 y (3 - 2x) = 48 y - 32 x y
  expected << 0, -16, 0, -16, 0, 24, 0, 24, 0;
  EXPECT_LT((report.conic->c - expected).norm(), 1e-12);
  ASSERT_EQ(report.lines.size(), 2u);
  // {x = 3/2} and {y = 0}.
  EXPECT_LT(lineAngle(report.lines[0].vec(), Vec3(1, 0, -1.5)), 1e-12);
  EXPECT_LT(lineAngle(report.lines[1].vec(), Vec3(0, 1, 0)), 1e-12);
  EXPECT_TRUE(report.degenerate);
  // 64 flow samples, one of them (theta = 3 pi / 2) at infinity.
  EXPECT_EQ(report.samples.size(), 63u);
}

TEST(Locus, FixtureNHyperbola) {
  const auto report = locus(kN, build_frame(kN));
  EXPECT_EQ(report.kind, LocusKind::hyperbola);
  EXPECT_FALSE(report.degenerate);
}

TEST(Locus, FixtureQOnTheMidline) {
  const auto report = locus(kQ, build_frame(kQ));
  EXPECT_TRUE(report.kind == LocusKind::line || report.kind == LocusKind::lineMinusSegment);
  ASSERT_EQ(report.lines.size(), 1u);
  EXPECT_LT(lineAngle(report.lines[0].vec(), Vec3(-1, 1, -1)), 1e-12);
  for (const auto& p : report.samples) EXPECT_NEAR(p.y - p.x - p.w, 0.0, 1e-9);
}

TEST(Locus, BothPairsParallelIsAPoint) {
  const CanonicalConfig c{1, 2, -1, 1, -1};
  EXPECT_EQ(locus(c, build_frame(c)).kind, LocusKind::point);
}

TEST(ModelsProperty, LinearityOfTheCenterMap) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = testing::random_config(rng);
    const auto p = from_params(c, u(rng), u(rng), u(rng));
    const auto q = from_params(c, u(rng), u(rng), u(rng));
    const double a = u(rng);
    const double b = u(rng);
    const Vec3 lhs = center_map(a * p + b * q).vec();
    const Vec3 rhs = a * center_map(p).vec() + b * center_map(q).vec();
    ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * (1 + lhs.norm())) << trial;
  }
}

TEST(ModelsProperty, CylindersAreaAndAxes) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = testing::random_config(rng);
    const Frame f = build_frame(c);
    const auto ac = std::get<Quadric>(cylinder_surface(c, LinePair::AC));
    const auto bd = std::get<Quadric>(cylinder_surface(c, LinePair::BD));
    ASSERT_NEAR(cross_section_area(ac), kPi / 8, 1e-9 * kPi / 8) << trial;
    ASSERT_NEAR(cross_section_area(bd), kPi / 8, 1e-9 * kPi / 8) << trial;
    const Vec2 pAC = meet(c.mA, c.bA, c.mC, 0);
    const Vec2 pBD = meet(c.mB, 1, c.mD, 0);
    ASSERT_LE(lineAngle(cylinder_principal_axes(ac).axisDirection, Vec3(pAC.x(), pAC.y(), 1)), 1e-8) << trial;
    ASSERT_LE(lineAngle(cylinder_principal_axes(bd).axisDirection, Vec3(pBD.x(), pBD.y(), 1)), 1e-8) << trial;
    for (const auto& s : sample_solution(f, 32)) {
      const Vec3 p = center_map(s.rect).vec();
      ASSERT_LE(std::abs(p.dot(ac.q() * p) - 0.5), 1e-8 * (1 + p.squaredNorm())) << trial;
      ASSERT_LE(std::abs(p.dot(bd.q() * p) - 0.5), 1e-8 * (1 + p.squaredNorm())) << trial;
    }
  }
}

TEST(ModelsProperty, ProjectedCentersSatisfyTheLocusConic) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = testing::random_config(rng);
    const Frame f = build_frame(c);
    const auto report = locus(c, f);
    ASSERT_TRUE(report.conic.has_value());
    if (report.kind == LocusKind::linePair) ASSERT_TRUE(f.degenerate || degenerate_by_diagonals(c, 1e-7));
    for (const auto& s : sample_solution(f, 128)) {
      const auto projected = project_to_C(f, s, 1e-6);
      const auto* r = std::get_if<Parallelogram>(&projected);
      if (!r) continue;
      const Vec2 x = r->center();
      const double value = report.conic->evaluate(x) / (report.conic->magnitude() * (1 + x.squaredNorm()));
      ASSERT_LE(std::abs(value), 1e-7) << trial;
    }
  }
}

TEST(ModelsProperty, LinePairExactlyForDegenerateConfigs) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = testing::random_config(rng);
    const Frame f = build_frame(c);
    if (std::abs(f.lambda - f.mu) < 1e-6) continue;
    EXPECT_EQ(locus(c, f).kind, LocusKind::hyperbola) << trial;
  }
  int built = 0;
  for (int trial = 0; trial < 200 && built < 50; ++trial) {
    CanonicalConfig c;
    if (!testing::constructed_degenerate(rng, c)) continue;
    ++built;
    const auto report = locus(c, build_frame(c));
    EXPECT_EQ(report.kind, LocusKind::linePair) << trial;
    EXPECT_EQ(report.lines.size(), 2u) << trial;
  }
  EXPECT_EQ(built, 50);
}

TEST(ModelsProperty, SharedCentersAreBounded) {
  std::mt19937_64 rng(74);
  const std::pair<testing::Parallel, std::size_t> cases[] = {
      {testing::Parallel::none, 1}, {testing::Parallel::ac, 2}, {testing::Parallel::bd, 2}, {testing::Parallel::both, 4}};
  for (const auto& [kind, bound] : cases) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto c = testing::random_config(rng, kind);
      const Frame f = build_frame(c);
      for (const auto& s : sample_solution(f, 64)) {
        const auto shared = unit_rectangles_sharing_center(f, s.coords);
        ASSERT_LE(shared.size(), bound);
        ASSERT_GE(shared.size(), 1u);
        const Vec3 center = center_map(s.rect).vec();
        for (const auto& other : shared) {
          ASSERT_LT((center_map(from_uvt(f, other).parallelogram).vec() - center).norm(), 1e-8);
        }
      }
    }
  }
}

}  // namespace
}  // namespace inscribe
