#include "circinv/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circinv/error.hpp"

namespace circinv {

namespace {

TangentField complete(const PeriodicFn& a_in, const Curve& base) {
  const int m = base.grid_size();
  const PeriodicFn a = a_in.on_grid(m);
  const auto kappa = curvature_samples(base);
  const double c = base.speed();
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = a[i] * kappa[static_cast<std::size_t>(i)] * c;
  // b = ḃ(0)φ − ∫₀^φ g with ḃ(0) = mean(g) reduces to −G(φ) + G(0), G the
  // zero-mean antiderivative of g.
  const TrigSeries big_g = TrigSeries::from_samples(g).antiderivative_zero_mean();
  TrigSeries b = TrigSeries::constant(big_g(0.0)) - big_g;
  return TangentField{a, PeriodicFn::from_series(std::move(b), m), base};
}

}  // namespace

std::vector<Vec2> TangentField::samples() const {
  const int m = base.grid_size();
  const auto d1 = base.sample_derivative(m, 1);
  const PeriodicFn an = a.on_grid(m);
  const PeriodicFn bn = b.on_grid(m);
  std::vector<Vec2> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Vec2& t = d1[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = an[i] * perp(t) + bn[i] * t;
  }
  return out;
}

VectorField TangentField::field() const { return VectorField::from_samples(samples()); }

TangentField tangent_decompose(const Curve& base, std::span<const Vec2> sigma) {
  const int m = base.grid_size();
  if (static_cast<int>(sigma.size()) != m) {
    throw Error(ErrorKind::Parameter, "curve_core::tangent_decompose",
                "expected " + std::to_string(m) + " samples of sigma, got " + std::to_string(sigma.size()));
  }
  const auto d1 = base.sample_derivative(m, 1);
  std::vector<double> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double n2 = d1[i].squaredNorm();
    a[i] = sigma[i].dot(perp(d1[i])) / n2;
    b[i] = sigma[i].dot(d1[i]) / n2;
  }
  return TangentField{PeriodicFn::from_samples(std::move(a)), PeriodicFn::from_samples(std::move(b)), base};
}

TangentField lift_normal(const PeriodicFn& a, const Curve& base) {
  const double scale = std::max(1.0, a.sup_norm());
  const double a0 = a.series()(0.0);
  const double a1 = a.series().derivative_at(0.0, 1);
  if (std::abs(a0) > 1e-8 * scale || std::abs(a1) > 1e-8 * scale) {
    throw Error(ErrorKind::Domain, "curve_core::lift_normal",
                "normal field must satisfy a(0) = a'(0) = 0; got a(0) = " + std::to_string(a0) +
                    ", a'(0) = " + std::to_string(a1));
  }
  return complete(a, base);
}

TangentField tangential_completion(const PeriodicFn& a, const Curve& base) { return complete(a, base); }

double TangentResidual::max() const {
  return std::max({ode, a_at_zero, b_at_zero, a_slope_at_zero, speed_variation});
}

TangentResidual tangent_residual(const TangentField& field) {
  const Curve& base = field.base;
  const int m = base.grid_size();
  const PeriodicFn a = field.a.on_grid(m);
  const PeriodicFn b = field.b.on_grid(m);
  const auto kappa = curvature_samples(base);
  const double c = base.speed();
  const auto b_dot = b.series().derivative().sample(m);
  const double b_dot0 = b.series().derivative_at(0.0, 1);

  TangentResidual res;
  for (int i = 0; i < m; ++i) {
    const auto si = static_cast<std::size_t>(i);
    res.ode = std::max(res.ode, std::abs(b_dot[si] - b_dot0 + a[i] * kappa[si] * c));
  }
  res.a_at_zero = std::abs(a.series()(0.0));
  res.b_at_zero = std::abs(b.series()(0.0));
  res.a_slope_at_zero = std::abs(a.series().derivative_at(0.0, 1));

  // ⟨σ̇, γ̇⟩ must be constant for σ to preserve constant speed to first order
  const VectorField sigma = field.field();
  const auto d1 = base.sample_derivative(m, 1);
  const auto sx = sigma.x.derivative().sample(m);
  const auto sy = sigma.y.derivative().sample(m);
  std::vector<double> inner(static_cast<std::size_t>(m));
  double mean = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    inner[i] = sx[i] * d1[i].x() + sy[i] * d1[i].y();
    mean += inner[i];
  }
  mean /= m;
  for (double v : inner) res.speed_variation = std::max(res.speed_variation, std::abs(v - mean));
  return res;
}

}  // namespace circinv
