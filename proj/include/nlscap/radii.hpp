#pragma once
// Validated radius selection for Newton-Kantorovich style contraction
// arguments: given bounds Y0 (residual), Z0+Z1 (first-order defect) and Z2
// (curvature), find r with  Z2 r^2 - (1 - Z0 - Z1) r + Y0 < 0  verified in
// interval arithmetic.  Such an r certifies a unique true solution within
// distance r of the numerical candidate.

#include <nlscap/interval.hpp>

#include <array>
#include <cmath>

namespace nlscap {

struct RadiiBounds {
  double Y0 = 0.0;
  double Z0 = 0.0;
  double Z1 = 0.0;
  double Z2 = 0.0;
};

struct RadiiResult {
  bool success = false;
  double radius = 0.0;
  double r_minus = 0.0;  // numerical root estimates, for reporting
  double r_plus = 0.0;
};

// Rigorous check that the contraction polynomial is negative at r.
inline bool radii_polynomial_negative(const RadiiBounds& b, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) return false;
  Interval R(r);
  Interval p = Interval(b.Z2) * sqr(R) -
               (Interval(1.0) - Interval(b.Z0) - Interval(b.Z1)) * R +
               Interval(b.Y0);
  return p.hi < 0.0;
}

inline RadiiResult solve_radii(const RadiiBounds& b) {
  RadiiResult out;
  double Z = b.Z0 + b.Z1;
  if (!(Z < 1.0) || b.Y0 < 0.0 || b.Z2 < 0.0) return out;

  if (b.Z2 == 0.0) {  // linear: negative beyond Y0 / (1-Z)
    double base = b.Y0 / (1.0 - Z);
    for (double f : {1.01, 1.1, 2.0}) {
      double c = (base > 0.0) ? f * base : f - 1.0;
      if (radii_polynomial_negative(b, c)) {
        out.success = true;
        out.radius = c;
        return out;
      }
    }
    return out;
  }

  double disc = (1.0 - Z) * (1.0 - Z) - 4.0 * b.Z2 * b.Y0;
  if (!(disc > 0.0)) return out;
  double sq = std::sqrt(disc);
  out.r_minus = ((1.0 - Z) - sq) / (2.0 * b.Z2);
  out.r_plus = ((1.0 - Z) + sq) / (2.0 * b.Z2);

  const std::array<double, 5> candidates = {
      1.01 * out.r_minus, 1.1 * out.r_minus, 2.0 * out.r_minus,
      std::sqrt(out.r_minus * out.r_plus), 0.5 * (out.r_minus + out.r_plus)};
  for (double c : candidates) {
    if (radii_polynomial_negative(b, c)) {
      out.success = true;
      out.radius = c;
      return out;
    }
  }
  return out;
}

}  // namespace nlscap
