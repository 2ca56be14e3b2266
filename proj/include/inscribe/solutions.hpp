#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "inscribe/frame.hpp"

namespace inscribe {

enum class Branch { plus, minus };

constexpr std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// A unit rectangle on the conformal solution curve.
struct SolutionSample {
  double theta = 0;
  UVT coords;
  Parallelogram rect;
  double scale = 0;
  Branch branch = Branch::plus;
};

struct Residuals {
  double cylBD = 0;     // 2u^2 + 2 mu t^2 - 1
  double cylAC = 0;     // 2v^2 + 2 lambda t^2 - 1
  double rectCone = 0;  // v^2 - u^2 - (mu - lambda) t^2
};

Residuals residuals(const Frame& frame, const UVT& c);

/// The conformal solution curve. For lambda >= mu (or a degenerate frame)
///   phi(theta) = (sqrt(lambda - mu cos^2)/sqrt(2 lambda), sin/sqrt(2), cos/sqrt(2 lambda)),
/// otherwise the same with the roles of u and v (and lambda, mu) exchanged.
UVT phi(const Frame& frame, double theta);

/// The sample at theta on phi (plus) or -phi (minus), materialized.
SolutionSample sample_at(const Frame& frame, double theta, Branch branch = Branch::plus);

/// n samples at theta_k = 2 pi k / n.
std::vector<SolutionSample> sample_solution(const Frame& frame, int n, Branch branch = Branch::plus);

/// Flow along the curve: the sample at theta + rho (reduced to [0, 2 pi)) on
/// the same branch.
SolutionSample flow_step(const Frame& frame, const SolutionSample& s, double rho);
SolutionSample flow_step(const Frame& frame, double theta, double rho, Branch branch = Branch::plus);

/// Rescale a unit rectangle into C itself; samples with |scale| <= tol are
/// rectangles at infinity.
std::variant<Parallelogram, AtInfinity> project_to_C(const Frame& frame, const SolutionSample& s,
                                                     double tol = 1e-12);

/// Rectangles shared by phi and -phi: {(0,0,1), (0,0,-1)} when
/// |lambda - mu| <= tol, otherwise empty.
std::vector<UVT> solution_intersection(const Frame& frame, double tol = kDefaultTol);

/// Unit rectangles of both branches with scale exactly w, located by
/// bracketing on a grid of gridN angles per branch and bisecting.
std::vector<SolutionSample> samples_at_scale(const Frame& frame, double w, int gridN = 4096);

}  // namespace inscribe
