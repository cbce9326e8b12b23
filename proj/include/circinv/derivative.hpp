#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/invariant.hpp"
#include "circinv/periodic.hpp"
#include "circinv/tangent.hpp"

namespace circinv {

/// I_r'[γ](σ) evaluated term by term at each grid point: the chord integral
/// ∫_m^p ⟨σ, γ̇^⊥⟩ by adaptive quadrature plus the endpoint terms, with
/// p', m' from the closed-form implicit-function expressions.
/// Throws NearSingularError when ⟨γ̇(p), γ(p)−γ(φ)⟩, its m counterpart or
/// √(r⁴ − ⟨u, v⟩²) drops below 1e−10·r².
PeriodicFn frechet_derivative(const Curve& curve, double r, const VectorField& sigma,
                              const InvariantOptions& options = {});
PeriodicFn frechet_derivative(const Curve& curve, double r, const TangentField& sigma,
                              const InvariantOptions& options = {});

/// The same linear map precomputed for band-limited σ with up to field_modes
/// modes. The chord integral of a trigonometric polynomial is taken exactly
/// in Fourier space and the endpoint terms are regrouped into per-point
/// weights, so I_r'[γ](σ)(φ_i) = Re Σ_j w_j (Kx_ij·σx_j + Ky_ij·σy_j).
class Linearization {
 public:
  Linearization(const Curve& curve, double r, int field_modes);

  int field_modes() const { return field_modes_; }
  int grid_size() const { return static_cast<int>(kx_.rows()); }
  const std::vector<IntersectionPair>& pairs() const { return pairs_; }

  /// I_r'[γ](σ) on the grid.
  std::vector<double> apply(const VectorField& sigma) const;
  /// One column of grid values per field.
  Eigen::MatrixXd apply_many(std::span<const VectorField> fields) const;

 private:
  int field_modes_;
  std::vector<IntersectionPair> pairs_;
  Eigen::MatrixXcd kx_;
  Eigen::MatrixXcd ky_;
};

/// Circle-case derivative ∫_{φ−θ}^{φ+θ} a − 2 sin(θ)·a, applied in Fourier
/// space (mode 0 times 2θ, mode j times 2 sin(jθ)/j).
PeriodicFn circle_derivative(const PeriodicFn& a, double theta);

/// Eigenvalue of the circle operator on mode j: 2θ − 2 sin θ for j = 0,
/// exactly 0 for |j| = 1, 2 sin(jθ)/j − 2 sin θ otherwise.
double spectrum_d(int j, double theta);

struct SineInequalityReport {
  bool all_nonzero = true;
  double min_abs_d = 0.0;
  int argmin_j = 0;
  double argmin_theta = 0.0;
  int checked = 0;
};

/// Evaluates d_j for 2 ≤ |j| ≤ j_max over the θ values, which must lie in
/// (0, π), and reports the smallest |d_j|.
SineInequalityReport sine_inequality_check(std::span<const double> thetas, int j_max);

}  // namespace circinv
