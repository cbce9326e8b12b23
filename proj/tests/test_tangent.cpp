#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circinv/error.hpp"
#include "circinv/quadrature.hpp"
#include "circinv/sampling.hpp"
#include "circinv/tangent.hpp"

using namespace circinv;
constexpr double kPi = std::numbers::pi;

TEST(TangentDecompose, NormalAndTangentOfCircle) {
  const Curve c = make_circle(1.0, 16, 128);
  const auto d1 = c.sample_derivative(128, 1);
  std::vector<Vec2> normal(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) normal[i] = perp(d1[i]);
  const auto tn = tangent_decompose(c, normal);
  const auto tt = tangent_decompose(c, d1);
  for (int i = 0; i < 128; ++i) {
    EXPECT_NEAR(tn.a[i], 1.0, 1e-14);
    EXPECT_NEAR(tn.b[i], 0.0, 1e-14);
    EXPECT_NEAR(tt.a[i], 0.0, 1e-14);
    EXPECT_NEAR(tt.b[i], 1.0, 1e-14);
  }
}

TEST(TangentDecompose, RoundTripOnPerturbedCurve) {
  std::mt19937_64 rng(21);
  const Curve c = random_admissible_curve(rng, 0.05, 32, 256);
  const VectorField sigma = random_vector_field(rng, 10, 1.0);
  std::vector<Vec2> samples(256);
  for (int i = 0; i < 256; ++i) samples[static_cast<std::size_t>(i)] = sigma.at(c.grid_phi(i));
  const auto t = tangent_decompose(c, samples);
  const auto back = t.samples();
  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, s.norm());
  for (std::size_t i = 0; i < samples.size(); ++i) EXPECT_LE((back[i] - samples[i]).norm(), 1e-12 * scale);
}

TEST(LiftNormal, ZeroFieldLiftsToZero) {
  const Curve c = make_circle(1.0, 16, 128);
  const auto t = lift_normal(PeriodicFn::from_samples(std::vector<double>(128, 0.0)), c);
  for (const auto& v : t.samples()) EXPECT_EQ(v.norm(), 0.0);
}

TEST(LiftNormal, OneMinusCosineGivesPeriodicTangentialPart) {
  // On the unit circle ḃ = ḃ(0) − a; periodicity forces |ḃ(0)| = mean(a) = 1
  // and b = ±sin φ, so b(0) = b(2π) = 0.
  const Curve c = make_circle(1.0, 16, 128);
  const auto a = PeriodicFn::from_series(TrigSeries::from_cos_sin(1.0, std::vector<double>{-1.0}, {}), 128);
  const auto t = lift_normal(a, c);
  const auto& b = t.b.series();
  const double bdot0 = b.derivative_at(0.0, 1);
  EXPECT_NEAR(std::abs(bdot0), 1.0, 1e-13);
  EXPECT_NEAR(b(0.0), 0.0, 1e-14);
  // b(2π) − b(0) by quadrature of the ODE right-hand side
  const double total = integrate_adaptive([&](double s) { return bdot0 - a(s); }, 0.0, 2 * kPi);
  EXPECT_NEAR(total, 0.0, 1e-12);
  for (double phi : {0.3, 1.9, 4.0}) EXPECT_NEAR(b(phi), bdot0 * std::sin(phi), 1e-13);
}

TEST(LiftNormal, RejectsFieldsOutsideTheConstraintSpace) {
  const Curve c = make_circle(1.0, 16, 128);
  const auto a = PeriodicFn::from_series(TrigSeries::from_cos_sin(0.0, std::vector<double>{0.0, 1.0}, {}), 128);
  try {
    lift_normal(a, c);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  const auto s = PeriodicFn::from_series(TrigSeries::from_cos_sin(0.0, {}, std::vector<double>{0.0, 1.0}), 128);
  EXPECT_THROW(lift_normal(s, c), Error);
}

TEST(LiftNormal, ResidualVanishesForRandomAdmissibleFields) {
  std::mt19937_64 rng(99);
  const Curve circle = make_circle(1.0, 32, 256);
  const Curve bumpy = random_admissible_curve(rng, 0.02, 32, 256, 2, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const Curve& base = trial % 2 == 0 ? circle : bumpy;
    const auto a = random_admissible_normal(rng, 12, 256);
    const auto t = lift_normal(a, base);
    const auto res = tangent_residual(t);
    EXPECT_LE(res.ode, 1e-10);
    EXPECT_LE(res.a_at_zero, 1e-10);
    EXPECT_LE(res.a_slope_at_zero, 1e-10);
    EXPECT_LE(res.b_at_zero, 1e-10);
    EXPECT_LE(res.speed_variation, 1e-10);
  }
}
