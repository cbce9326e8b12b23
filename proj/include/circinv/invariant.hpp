#pragma once

#include <optional>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/periodic.hpp"

namespace circinv {

/// Half-angle of the arc of a radius-R circle inside a radius-r disk centred
/// on it: arccos(1 − r²/(2R²)). Requires 0 < r < 2R.
double theta_circle(double r, double radius);

/// Parameters of the previous (m) and next (p) crossing of the circle of
/// radius r about γ(φ), lifted so that φ − π < m < φ < p < φ + π.
struct IntersectionPair {
  double m = 0.0;
  double p = 0.0;
};

/// Newton iteration on |γ(d) − γ(φ)|² − r², seeded from hint when given,
/// else from φ ± theta_circle(r, c_γ), else from a sign-change scan.
/// Converges to |g| ≤ 1e−12·r² and then polishes.
/// Throws ConvergenceError or TopologyError.
IntersectionPair intersection_params(const Curve& curve, double r, double phi,
                                     std::optional<IntersectionPair> hint = std::nullopt);

/// Intersection parameters at every grid point, continued along the grid in
/// fixed-size chunks (deterministic for any thread count).
std::vector<IntersectionPair> intersection_profile(const Curve& curve, double r);

struct IntersectionCount {
  int count = 0;
  /// False when a crossing is (nearly) tangential, |h'| < 1e−10.
  bool reliable = true;
};

/// Transversal crossings of ‖γ(ψ) − γ(φ)‖ = r, found as sign changes on an
/// 8·M-point grid and refined by bisection.
IntersectionCount intersection_count(const Curve& curve, double r, double phi);
/// The same at every grid point φ_i, sharing the fine samples.
std::vector<IntersectionCount> intersection_counts(const Curve& curve, double r);

/// Throws TopologyError unless every grid point has exactly two reliable
/// crossings.
void validate_neighborhood(const Curve& curve, double r);

struct InvariantProfile {
  double r = 0.0;
  PeriodicFn values;
  std::vector<IntersectionPair> pairs;
};

struct InvariantOptions {
  /// Absolute tolerance of the chord-integral quadrature.
  double quad_tol = 1e-12;
};

/// I_r at every grid point through the chord integral over [m, p] plus the
/// circular-sector term (r²/2)·arccos(⟨u, v⟩/r²).
/// Throws TopologyError, ConvergenceError or ConsistencyError.
InvariantProfile invariant_analytic(const Curve& curve, double r, const InvariantOptions& options = {});

}  // namespace circinv
