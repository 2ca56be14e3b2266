#include "inscribe/solutions.hpp"

#include <cmath>
#include <numbers>

namespace inscribe {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduceAngle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// The u-dominant form applies when lambda >= mu; a degenerate frame always
// uses it so that numerically equal invariants pick one parametrization.
bool lambdaDominant(const Frame& f) { return f.degenerate || f.lambda >= f.mu; }

double clampedSqrt(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

Residuals residuals(const Frame& frame, const UVT& c) {
  const double u2 = c.u * c.u;
  const double v2 = c.v * c.v;
  const double t2 = c.t * c.t;
  return {2.0 * u2 + 2.0 * frame.mu * t2 - 1.0, 2.0 * v2 + 2.0 * frame.lambda * t2 - 1.0,
          v2 - u2 - (frame.mu - frame.lambda) * t2};
}

UVT phi(const Frame& frame, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double l = frame.lambda;
  const double m = frame.mu;
  if (lambdaDominant(frame)) {
    const double k = std::sqrt(2.0 * l);
    return {clampedSqrt(l - m * c * c) / k, s / std::numbers::sqrt2, c / k};
  }
  const double k = std::sqrt(2.0 * m);
  return {s / std::numbers::sqrt2, clampedSqrt(m - l * c * c) / k, c / k};
}

SolutionSample sample_at(const Frame& frame, double theta, Branch branch) {
  SolutionSample s;
  s.theta = theta;
  s.branch = branch;
  s.coords = branch == Branch::plus ? phi(frame, theta) : -phi(frame, theta);
  const auto built = from_uvt(frame, s.coords);
  s.rect = built.parallelogram;
  s.scale = built.scale;
  return s;
}

std::vector<SolutionSample> sample_solution(const Frame& frame, int n, Branch branch) {
  if (n < 1) throw GeometryError(ErrorCode::EmptyInput, "sample count must be positive");
  std::vector<SolutionSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(sample_at(frame, kTwoPi * k / n, branch));
  return out;
}

SolutionSample flow_step(const Frame& frame, const SolutionSample& s, double rho) {
  return sample_at(frame, reduceAngle(s.theta + rho), s.branch);
}

SolutionSample flow_step(const Frame& frame, double theta, double rho, Branch branch) {
  return sample_at(frame, reduceAngle(theta + rho), branch);
}

std::variant<Parallelogram, AtInfinity> project_to_C(const Frame&, const SolutionSample& s, double tol) {
  if (std::abs(s.scale) <= tol) return AtInfinity{};
  return (1.0 / s.scale) * s.rect;
}

std::vector<UVT> solution_intersection(const Frame& frame, double tol) {
  if (std::abs(frame.lambda - frame.mu) <= tol) return {{0, 0, 1}, {0, 0, -1}};
  return {};
}

std::vector<SolutionSample> samples_at_scale(const Frame& frame, double w, int gridN) {
  std::vector<SolutionSample> out;
  for (Branch branch : {Branch::plus, Branch::minus}) {
    auto g = [&](double theta) { return sample_at(frame, theta, branch).scale - w; };
    double prevTheta = 0;
    double prev = g(prevTheta);
    for (int k = 1; k <= gridN; ++k) {
      const double theta = kTwoPi * k / gridN;
      const double cur = g(theta);
      if (prev == 0.0) {
        out.push_back(sample_at(frame, prevTheta, branch));
      } else if ((prev < 0) != (cur < 0) && cur != 0.0) {
        double lo = prevTheta, hi = theta, glo = prev;
        for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        out.push_back(sample_at(frame, 0.5 * (lo + hi), branch));
      }
      prevTheta = theta;
      prev = cur;
    }
  }
  return out;
}

}  // namespace inscribe
