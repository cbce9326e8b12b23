#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "circinv/fourier.hpp"

namespace circinv {

using Vec2 = Eigen::Vector2d;

/// Clockwise quarter turn, (x, y) ↦ (y, −x). For a counter-clockwise curve
/// γ̇^⊥ is the outward normal, and ⟨u, v^⊥⟩ = cross(u, v).
inline Vec2 perp(const Vec2& v) { return {v.y(), -v.x()}; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Band-limited planar vector field, one TrigSeries per component.
struct VectorField {
  TrigSeries x;
  TrigSeries y;

  Vec2 at(double phi) const { return {x(phi), y(phi)}; }
  Vec2 derivative_at(double phi, int order) const {
    return {x.derivative_at(phi, order), y.derivative_at(phi, order)};
  }
  int n_modes() const { return std::max(x.n_modes(), y.n_modes()); }
  static VectorField from_samples(std::span<const Vec2> samples, int n_modes = -1);
};

/// Position and first two parameter derivatives at one φ.
struct CurveJet {
  Vec2 point;
  Vec2 d1;
  Vec2 d2;
};

/// Closed planar curve stored as a truncated Fourier series per coordinate.
///
/// The cached speed is c_γ = L / 2π, which equals ‖γ̇‖ for constant-speed
/// curves. Curves need not be normalized; see normalize().
class Curve {
 public:
  /// Throws ParameterError unless grid_size ≥ 4·n_modes and n_modes ≥ 1.
  Curve(TrigSeries x, TrigSeries y, int grid_size);
  Curve(VectorField field, int grid_size) : Curve(std::move(field.x), std::move(field.y), grid_size) {}

  int n_modes() const { return n_modes_; }
  int grid_size() const { return grid_size_; }
  double speed() const { return speed_; }
  double length() const;
  double grid_phi(int i) const;

  const TrigSeries& x() const { return field_.x; }
  const TrigSeries& y() const { return field_.y; }
  const VectorField& field() const { return field_; }

  Vec2 evaluate(double phi) const;
  Vec2 evaluate_d1(double phi) const;
  Vec2 evaluate_d2(double phi) const;
  CurveJet jet(double phi) const;
  /// Uses caller-provided phasors e^{ijφ}, j = 0..n_modes().
  CurveJet jet_with(const cplx* phasors) const;

  /// Points γ(2πk/count), k = 0..count−1.
  std::vector<Vec2> sample(int count) const;
  std::vector<Vec2> sample_derivative(int count, int order) const;

 private:
  VectorField field_;
  int n_modes_;
  int grid_size_;
  double speed_;
};

/// Radius-R constant-speed circle in normalized position: γ(0) = (1, 0),
/// γ̇(0) = (0, R), centre (1 − R, 0).
Curve make_circle(double radius, int n_modes, int grid_size);

/// Unit circle displaced along its outward normal: γ(φ) = (1 + ρ(φ))(cos φ, sin φ).
/// ρ must have fewer than n_modes modes. The result is not constant-speed.
Curve perturbed_circle(const TrigSeries& rho, int n_modes, int grid_size);

/// Signed curvature cross(γ̇, γ̈)/c_γ³, positive on counter-clockwise convex
/// curves (1/R on a radius-R circle). Assumes constant speed.
double curvature(const Curve& curve, double phi);
std::vector<double> curvature_samples(const Curve& curve);

/// Signed enclosed area (Green's theorem, exact for the stored coefficients).
double enclosed_area(const Curve& curve);

/// max_φ |‖γ̇(φ)‖ − c_γ| / c_γ over the evaluation grid.
double speed_deviation(const Curve& curve);

/// Throws EmbeddingError if the grid polygonization self-intersects or two
/// non-adjacent edges come closer than 1e−9·c_γ.
void check_embedded(const Curve& curve);

/// Reparameterize to constant speed and move rigidly so that γ(0) = (1, 0)
/// and γ̇(0) = (0, c_γ); orientation is made counter-clockwise.
/// Throws EmbeddingError or DegenerateCurveError.
Curve normalize(const Curve& curve);

/// Rotation by angle about the origin followed by translation.
Curve rigid_motion(const Curve& curve, double angle, const Vec2& translation);
Curve scaled(const Curve& curve, double factor);
/// γ ∘ Φ with Φ(φ) = φ + delta.
Curve reparam_shift(const Curve& curve, double delta);
/// γ + t·σ, truncated to the curve's modes.
Curve add_field(const Curve& curve, const VectorField& sigma, double t = 1.0);

/// Sup over the grid of the Euclidean distance between two curves, and the
/// discrete C^k distance max_{j≤k} sup ‖(γ − γ̃)^{(j)}‖.
double sup_distance(const Curve& a, const Curve& b);
double ck_distance(const Curve& a, const Curve& b, int k);

}  // namespace circinv
