#include "inscribe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/LU>

namespace inscribe {
namespace {

Vec2 lengthDefect(const CanonicalConfig& cfg, double xA, double xB, double w) {
  const auto d = diagonal_vectors(from_params(cfg, xA, xB, w));
  return {d.dAC.squaredNorm() - 0.5, d.dBD.squaredNorm() - 0.5};
}

// Iterates past tol while the defect keeps shrinking, so accepted roots are
// polished well below the acceptance threshold.
std::optional<Vec2> newton(const CanonicalConfig& cfg, Vec2 x, double w, double tol) {
  constexpr int kMaxIterations = 80;
  Vec2 best = x;
  double bestDefect = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Vec2 f = lengthDefect(cfg, x.x(), x.y(), w);
    if (!f.allFinite()) break;
    const double defect = f.cwiseAbs().maxCoeff();
    if (defect < bestDefect) {
      best = x;
      bestDefect = defect;
      stalled = 0;
    } else if (++stalled >= 3) {
      break;
    }
    if (defect == 0.0) break;
    Eigen::Matrix2d jac;
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Vec2 xh = x;
      xh(k) += h;
      jac.col(k) = (lengthDefect(cfg, xh.x(), xh.y(), w) - f) / h;
    }
    Eigen::FullPivLU<Eigen::Matrix2d> lu(jac);
    if (!lu.isInvertible()) break;
    x -= lu.solve(f);
  }
  if (bestDefect <= tol) return best;
  return std::nullopt;
}

}  // namespace

double oracle_box_half_width(const CanonicalConfig& cfg) {
  return 8.0 * (1.0 + std::abs(cfg.bA)) / std::min(1.0, std::abs(cfg.mC - cfg.mD));
}

std::vector<OracleHit> oracle_scan(const CanonicalConfig& cfg, const std::vector<double>& wGrid, int gridN,
                                   double tol) {
  if (gridN < 8) throw GeometryError(ErrorCode::EmptyInput, "oracle grid needs at least 8 starts per axis");
  cfg.validate();
  const double half = oracle_box_half_width(cfg);

  std::vector<OracleHit> out;
  for (double w : wGrid) {
    std::vector<Vec2> roots;
    for (int i = 0; i < gridN; ++i) {
      for (int j = 0; j < gridN; ++j) {
        const Vec2 start(-half + 2.0 * half * (i + 0.5) / gridN, -half + 2.0 * half * (j + 0.5) / gridN);
        if (auto root = newton(cfg, start, w, tol)) roots.push_back(*root);
      }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
    std::vector<Vec2> unique;
    for (const Vec2& r : roots) {
      const bool seen =
          std::any_of(unique.begin(), unique.end(), [&](const Vec2& u) { return (u - r).norm() <= 1e-6; });
      if (!seen) unique.push_back(r);
    }
    for (const Vec2& r : unique) {
      const Parallelogram p = from_params(cfg, r.x(), r.y(), w);
      OracleHit hit;
      hit.xA = r.x();
      hit.xB = r.y();
      hit.w = w;
      hit.vertices = {p.vA, p.vB, p.vC, p.vD};
      hit.residual = lengthDefect(cfg, r.x(), r.y(), w).cwiseAbs().maxCoeff();
      out.push_back(hit);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const OracleHit& a, const OracleHit& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.xA != b.xA) return a.xA < b.xA;
    return a.xB < b.xB;
  });
  return out;
}

VertexTuple vertex_tuple(const OracleHit& hit) {
  VertexTuple t;
  t << hit.vertices[0], hit.vertices[1], hit.vertices[2], hit.vertices[3];
  return t;
}

double set_distance(const std::vector<VertexTuple>& a, const std::vector<VertexTuple>& b) {
  if (a.empty() || b.empty()) throw GeometryError(ErrorCode::EmptyInput, "Hausdorff distance of an empty set");
  auto directed = [](const std::vector<VertexTuple>& from, const std::vector<VertexTuple>& to) {
    double worst = 0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, (p - q).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

double set_distance(const std::vector<OracleHit>& hits, const std::vector<SolutionSample>& samples) {
  std::vector<VertexTuple> a;
  std::vector<VertexTuple> b;
  for (const auto& h : hits) a.push_back(vertex_tuple(h));
  for (const auto& s : samples) b.push_back(vertex_tuple(s.rect));
  return set_distance(a, b);
}

}  // namespace inscribe
