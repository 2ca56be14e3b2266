#pragma once

#include <span>
#include <utility>

#include "inscribe/config.hpp"

namespace inscribe {

/// A parallelogram conformally inscribed in a configuration: vertex vL lies
/// on the line L(w) of the scaled configuration C(w).
///
/// Parallelograms form a three-dimensional vector space under vertex-wise
/// addition and scaling; the scale w combines the same way.
struct Parallelogram {
  Vec2 vA = Vec2::Zero();
  Vec2 vB = Vec2::Zero();
  Vec2 vC = Vec2::Zero();
  Vec2 vD = Vec2::Zero();
  double w = 0;

  Vec2 center() const { return 0.5 * (vA + vC); }

  Parallelogram& operator+=(const Parallelogram& o);
  Parallelogram& operator*=(double s);
};

Parallelogram operator+(Parallelogram p, const Parallelogram& q);
Parallelogram operator-(Parallelogram p, const Parallelogram& q);
Parallelogram operator*(double s, Parallelogram p);

struct DiagonalPair {
  Vec2 dAC = Vec2::Zero();
  Vec2 dBD = Vec2::Zero();
};

struct SidePair {
  Vec2 sAB = Vec2::Zero();
  Vec2 sBC = Vec2::Zero();
};

struct VectorPair {
  DiagonalPair diagonals;
  SidePair sides;
};

/// The unique parallelogram with vertex A at abscissa xA, vertex B at
/// abscissa xB, inscribed in C(w). Throws InvalidConfig if mC == mD.
Parallelogram from_params(const CanonicalConfig& cfg, double xA, double xB, double w);
inline Parallelogram from_params(const CanonicalConfig& cfg, const Vec3& params) {
  return from_params(cfg, params.x(), params.y(), params.z());
}

/// Inverse of from_params: (xA, xB, w).
inline Vec3 params_of(const Parallelogram& p) { return {p.vA.x(), p.vB.x(), p.w}; }

Parallelogram linear_combine(std::span<const std::pair<double, Parallelogram>> terms);

VectorPair extract_vectors(const Parallelogram& p);
inline DiagonalPair diagonal_vectors(const Parallelogram& p) { return extract_vectors(p).diagonals; }

/// <P, Q> = P_AC . Q_AC + P_BD . Q_BD
double inner(const Parallelogram& p, const Parallelogram& q);
double norm(const Parallelogram& p);

/// The same inner product computed from side vectors, 2 P_AB.Q_AB + 2 P_BC.Q_BC.
double inner_by_sides(const Parallelogram& p, const Parallelogram& q);

/// Largest violation of the incidence and bisection constraints.
double inscription_residual(const CanonicalConfig& cfg, const Parallelogram& p);

/// Matrix of the linear map (xA, xB, w) -> (dAC, dBD).
Eigen::Matrix<double, 4, 3> diagonal_jacobian(const CanonicalConfig& cfg);

/// Gram matrix of the inner product in (xA, xB, w) coordinates.
Eigen::Matrix3d parameter_gram(const CanonicalConfig& cfg);

/// Vertex coordinates (xA, yA, xB, yB, xC, yC, xD, yD).
Eigen::Matrix<double, 8, 1> vertex_tuple(const Parallelogram& p);

}  // namespace inscribe
