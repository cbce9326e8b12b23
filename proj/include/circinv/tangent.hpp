#pragma once

#include <span>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/periodic.hpp"

namespace circinv {

/// Perturbation σ = a·γ̇^⊥ + b·γ̇ of a base curve, stored by its normal and
/// tangential components on the base curve's grid.
struct TangentField {
  PeriodicFn a;
  PeriodicFn b;
  Curve base;

  /// σ sampled on the base grid.
  std::vector<Vec2> samples() const;
  /// σ as a band-limited vector field (all modes the grid resolves).
  VectorField field() const;
};

/// a = ⟨σ, γ̇^⊥⟩/‖γ̇‖², b = ⟨σ, γ̇⟩/‖γ̇‖², pointwise on the base grid.
/// sigma holds σ(φ_i) for the base grid.
TangentField tangent_decompose(const Curve& base, std::span<const Vec2> sigma);

/// Tangent vector σ ∈ T_γC_k with prescribed normal part a. The tangential
/// part solves ḃ = ḃ(0) − a·κ·c_γ with b periodic and b(0) = 0.
/// Throws DomainError unless a(0) = ȧ(0) = 0 (to 1e−8 relative to ‖a‖_∞).
TangentField lift_normal(const PeriodicFn& a, const Curve& base);

/// Same construction without the domain check. Used for basis functions that
/// only satisfy the constraints in combination.
TangentField tangential_completion(const PeriodicFn& a, const Curve& base);

/// Deviations from the tangent-space conditions, each as a sup over the grid.
struct TangentResidual {
  double ode = 0.0;            // |ḃ − ḃ(0) + a·κ·c_γ|
  double a_at_zero = 0.0;      // |a(0)|
  double b_at_zero = 0.0;      // |b(0)|
  double a_slope_at_zero = 0.0;  // |ȧ(0)|
  double speed_variation = 0.0;  // spread of ⟨σ̇, γ̇⟩ about its mean

  double max() const;
};

TangentResidual tangent_residual(const TangentField& field);

}  // namespace circinv
