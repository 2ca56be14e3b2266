#include "inscribe/parallelogram.hpp"

#include <algorithm>
#include <cmath>

namespace inscribe {

Parallelogram& Parallelogram::operator+=(const Parallelogram& o) {
  vA += o.vA;
  vB += o.vB;
  vC += o.vC;
  vD += o.vD;
  w += o.w;
  return *this;
}

Parallelogram& Parallelogram::operator*=(double s) {
  vA *= s;
  vB *= s;
  vC *= s;
  vD *= s;
  w *= s;
  return *this;
}

Parallelogram operator+(Parallelogram p, const Parallelogram& q) { return p += q; }
Parallelogram operator-(Parallelogram p, const Parallelogram& q) { return p += -1.0 * q; }
Parallelogram operator*(double s, Parallelogram p) { return p *= s; }

Parallelogram from_params(const CanonicalConfig& cfg, double xA, double xB, double w) {
  if (cfg.mC == cfg.mD) throw GeometryError(ErrorCode::InvalidConfig, "lines C and D are parallel");
  const double mAD = cfg.mA - cfg.mD;
  const double mDB = cfg.mD - cfg.mB;
  const double mDC = cfg.mD - cfg.mC;
  const double xC = (mAD * xA + mDB * xB + (cfg.bA - 1.0) * w) / mDC;
  // Diagonals bisect each other: xA + xC = xB + xD.
  const double xD = xA + xC - xB;

  Parallelogram p;
  p.vA = {xA, cfg.mA * xA + cfg.bA * w};
  p.vB = {xB, cfg.mB * xB + w};
  p.vC = {xC, cfg.mC * xC};
  p.vD = {xD, cfg.mD * xD};
  p.w = w;
  return p;
}

Parallelogram linear_combine(std::span<const std::pair<double, Parallelogram>> terms) {
  Parallelogram out;
  for (const auto& [coef, p] : terms) out += coef * p;
  return out;
}

VectorPair extract_vectors(const Parallelogram& p) {
  return {{p.vA - p.vC, p.vB - p.vD}, {p.vA - p.vB, p.vB - p.vC}};
}

double inner(const Parallelogram& p, const Parallelogram& q) {
  const auto dp = diagonal_vectors(p);
  const auto dq = diagonal_vectors(q);
  return dp.dAC.dot(dq.dAC) + dp.dBD.dot(dq.dBD);
}

double norm(const Parallelogram& p) { return std::sqrt(inner(p, p)); }

double inner_by_sides(const Parallelogram& p, const Parallelogram& q) {
  const auto sp = extract_vectors(p).sides;
  const auto sq = extract_vectors(q).sides;
  return 2.0 * sp.sAB.dot(sq.sAB) + 2.0 * sp.sBC.dot(sq.sBC);
}

double inscription_residual(const CanonicalConfig& cfg, const Parallelogram& p) {
  const auto ls = cfg.lines(p.w);
  const double onLines = std::max({std::abs(ls[0].evaluate(p.vA)), std::abs(ls[1].evaluate(p.vB)),
                                   std::abs(ls[2].evaluate(p.vC)), std::abs(ls[3].evaluate(p.vD))});
  const double bisect = ((p.vA + p.vC) - (p.vB + p.vD)).norm();
  return std::max(onLines, bisect);
}

Eigen::Matrix<double, 4, 3> diagonal_jacobian(const CanonicalConfig& cfg) {
  // The diagonal map is linear in (xA, xB, w); assemble it column by column.
  Eigen::Matrix<double, 4, 3> jac;
  for (int k = 0; k < 3; ++k) {
    const auto d = diagonal_vectors(from_params(cfg, Vec3::Unit(k)));
    jac.col(k) << d.dAC, d.dBD;
  }
  return jac;
}

Eigen::Matrix3d parameter_gram(const CanonicalConfig& cfg) {
  const auto jac = diagonal_jacobian(cfg);
  return jac.transpose() * jac;
}

Eigen::Matrix<double, 8, 1> vertex_tuple(const Parallelogram& p) {
  Eigen::Matrix<double, 8, 1> out;
  out << p.vA, p.vB, p.vC, p.vD;
  return out;
}

}  // namespace inscribe
