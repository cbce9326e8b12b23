#pragma once

// Reference values computed independently of the library code paths under
// test.

#include <cmath>
#include <numbers>
#include <vector>

#include "circinv/curve.hpp"

namespace circinv::oracles {

/// Area of the intersection of two disks with radii a, b and centre
/// distance d (|a − b| < d < a + b).
inline double lens_area(double a, double b, double d) {
  const double alpha = std::acos((d * d + a * a - b * b) / (2.0 * d * a));
  const double beta = std::acos((d * d + b * b - a * a) / (2.0 * d * b));
  const double k = std::sqrt((-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b));
  return a * a * alpha + b * b * beta - 0.5 * k;
}

/// Circular-segment form for a disk of radius r centred on a circle of
/// radius R: the lens area above with d = R.
inline double circle_invariant(double radius, double r) { return lens_area(radius, r, radius); }

/// Chord integral ∫_m^p cross(γ(ψ) − γ(φ), γ̇(ψ)) dψ evaluated exactly:
/// cross(γ, γ̇) is a trigonometric polynomial of degree 2N, integrated in
/// closed form, and the γ(φ) part telescopes.
inline double exact_chord_integral(const Curve& curve, double phi, double m, double p) {
  const int n = curve.n_modes();
  const int grid = 8 * n + 8;
  const auto pts = curve.sample(grid);
  const auto d1 = curve.sample_derivative(grid, 1);
  std::vector<double> h(static_cast<std::size_t>(grid));
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = cross(pts[i], d1[i]);
  const TrigSeries hs = TrigSeries::from_samples(h);
  const TrigSeries anti = hs.antiderivative_zero_mean();
  const double whole = hs.mean() * (p - m) + anti(p) - anti(m);
  return whole - cross(curve.evaluate(phi), curve.evaluate(p) - curve.evaluate(m));
}

/// Menger curvature of three points: 4·area / (product of side lengths),
/// signed positive for a counter-clockwise turn.
inline double menger_curvature(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double twice_area = cross(b - a, c - a);
  return 2.0 * twice_area / ((b - a).norm() * (c - b).norm() * (c - a).norm());
}

/// Signed polygon area by the shoelace formula.
inline double shoelace(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * s;
}

}  // namespace circinv::oracles
