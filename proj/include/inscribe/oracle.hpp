#pragma once

#include <array>
#include <vector>

#include "inscribe/parallelogram.hpp"
#include "inscribe/solutions.hpp"

namespace inscribe {

/// A unit rectangle found by direct root finding on the diagonal lengths.
struct OracleHit {
  double xA = 0;
  double xB = 0;
  double w = 0;
  std::array<Vec2, 4> vertices{};
  double residual = 0;  // max(| |dAC|^2 - 1/2 |, | |dBD|^2 - 1/2 |)
};

/// Half-width of the square of starting points in (xA, xB).
double oracle_box_half_width(const CanonicalConfig& cfg);

/// Multi-start Newton on F(xA, xB) = (|dAC|^2 - 1/2, |dBD|^2 - 1/2) for every
/// w in wGrid, gridN x gridN starts per slice. Hits with |F| <= tol are kept,
/// deduplicated at distance 1e-6 and sorted by (w, xA, xB). Throws EmptyInput
/// when gridN < 8.
std::vector<OracleHit> oracle_scan(const CanonicalConfig& cfg, const std::vector<double>& wGrid, int gridN,
                                   double tol = 1e-10);

using VertexTuple = Eigen::Matrix<double, 8, 1>;

/// Symmetric Hausdorff distance between two finite sets of vertex tuples.
/// Throws EmptyInput when either set is empty.
double set_distance(const std::vector<VertexTuple>& a, const std::vector<VertexTuple>& b);
double set_distance(const std::vector<OracleHit>& hits, const std::vector<SolutionSample>& samples);

VertexTuple vertex_tuple(const OracleHit& hit);

}  // namespace inscribe
