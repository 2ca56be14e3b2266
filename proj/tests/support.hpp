#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "inscribe/config.hpp"

namespace inscribe::testing {

enum class Parallel { none, ac, bd, both };

/// Slopes uniform in [-5, 5] with |mC - mD| >= 1e-3, bA uniform in
/// [-5, 5] \ {0}; the requested pairs are then made parallel exactly.
inline CanonicalConfig random_config(std::mt19937_64& rng, Parallel parallel = Parallel::none) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  CanonicalConfig c;
  do {
    c.mC = u(rng);
    c.mD = u(rng);
  } while (std::abs(c.mC - c.mD) < 1e-3);
  do {
    c.bA = u(rng);
  } while (c.bA == 0.0);
  c.mA = u(rng);
  c.mB = u(rng);
  if (parallel == Parallel::ac || parallel == Parallel::both) c.mA = c.mC;
  if (parallel == Parallel::bd || parallel == Parallel::both) c.mB = c.mD;
  return c;
}

/// Cosine of the angle between the diagonal lines E and F, computed from
/// the four intersection points directly.
inline double diagonal_cosine(const CanonicalConfig& c) {
  // A ∩ B, A ∩ D, B ∩ C by Cramer's rule on y = m x + b.
  auto meet = [](double m1, double b1, double m2, double b2) {
    const double x = (b2 - b1) / (m1 - m2);
    return Vec2(x, m1 * x + b1);
  };
  const Vec2 ab = meet(c.mA, c.bA, c.mB, 1.0);
  const Vec2 ad = meet(c.mA, c.bA, c.mD, 0.0);
  const Vec2 bc = meet(c.mB, 1.0, c.mC, 0.0);
  const Vec2 e = ab.normalized();
  const Vec2 f = (ad - bc).normalized();
  return e.dot(f);
}

/// Degenerate configuration: random A, B, C, then mD solving E ⊥ F by
/// bisection on the diagonal cosine. Returns false when no sign change is
/// found in the scanned range.
inline bool constructed_degenerate(std::mt19937_64& rng, CanonicalConfig& out) {
  CanonicalConfig c = random_config(rng);
  auto g = [&](double mD) {
    CanonicalConfig t = c;
    t.mD = mD;
    return diagonal_cosine(t);
  };
  constexpr int kScan = 2000;
  double prevM = -5.0;
  double prev = g(prevM);
  for (int k = 1; k <= kScan; ++k) {
    const double m = -5.0 + 10.0 * k / kScan;
    const double cur = g(m);
    // Skip jumps through infinity (F flipping orientation near a pole).
    if (std::isfinite(prev) && std::isfinite(cur) && (prev < 0) != (cur < 0) && std::abs(prev - cur) < 0.5) {
      double lo = prevM;
      double hi = m;
      double glo = prev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      c.mD = 0.5 * (lo + hi);
      if (std::abs(c.mC - c.mD) < 1e-3 || std::abs(c.mB - c.mD) < 1e-3 || std::abs(c.mA - c.mD) < 1e-3) return false;
      out = c;
      return true;
    }
    prevM = m;
    prev = cur;
  }
  return false;
}

}  // namespace inscribe::testing
