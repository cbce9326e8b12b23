#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circinv/curve.hpp"
#include "circinv/error.hpp"
#include "circinv/sampling.hpp"
#include "oracles.hpp"

using namespace circinv;
constexpr double kPi = std::numbers::pi;

namespace {

Curve from_function(const std::function<Vec2(double)>& f, int n_modes, int grid_size) {
  const int fine = 4 * grid_size;
  std::vector<Vec2> pts(static_cast<std::size_t>(fine));
  for (int i = 0; i < fine; ++i) pts[static_cast<std::size_t>(i)] = f(2 * kPi * i / fine);
  return Curve(VectorField::from_samples(pts, n_modes), grid_size);
}

double max_point_gap(const Curve& a, const Curve& b) {
  double gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double phi = 2 * kPi * i / 1000.0;
    gap = std::max(gap, (a.evaluate(phi) - b.evaluate(phi)).norm());
  }
  return gap;
}

}  // namespace

TEST(MakeCircle, StandardPosition) {
  const Curve c = make_circle(1.0, 16, 256);
  EXPECT_NEAR((c.evaluate(0.0) - Vec2(1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c.evaluate(kPi / 2) - Vec2(0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c.evaluate_d1(0.0) - Vec2(0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c.evaluate_d2(kPi) - Vec2(1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(make_circle(2.0, 16, 256).speed(), 2.0, 1e-14);
}

TEST(MakeCircle, InvalidSizes) {
  EXPECT_THROW(make_circle(1.0, 16, 32), Error);
  EXPECT_THROW(make_circle(1.0, 0, 32), Error);
  EXPECT_THROW(make_circle(-1.0, 8, 32), Error);
}

TEST(Curvature, CircleOfRadiusR) {
  for (double radius : {0.5, 1.0, 2.0, 5.0}) {
    const Curve c = make_circle(radius, 16, 128);
    for (double k : curvature_samples(c)) EXPECT_NEAR(k, 1.0 / radius, 1e-10);
  }
}

TEST(Curvature, SmallEllipticPerturbationMatchesSampledPoints) {
  const double eps = 1e-6;
  const auto rho = TrigSeries::from_cos_sin(0.0, std::vector<double>{0.0, eps}, {});
  const Curve c = normalize(perturbed_circle(rho, 32, 256));
  const double h = 1e-3;
  for (double phi : {0.0, 0.8, 2.0, 4.4}) {
    const double k = curvature(c, phi);
    EXPECT_NEAR(k, 1.0, 10 * eps);
    const double menger = oracles::menger_curvature(c.evaluate(phi - h), c.evaluate(phi), c.evaluate(phi + h));
    EXPECT_NEAR(k, menger, 1e-6);
  }
}

TEST(Normalize, NonuniformCircleBecomesStandardCircle) {
  const Curve input = from_function(
      [](double t) {
        const double s = t + 0.3 * std::sin(t);
        return Vec2(std::cos(s), std::sin(s));
      },
      32, 256);
  const Curve out = normalize(input);
  EXPECT_LE(max_point_gap(out, make_circle(1.0, 32, 256)), 1e-10);
}

TEST(Normalize, RigidlyMovedCircleReturnsToStandard) {
  const Curve moved = rigid_motion(make_circle(1.0, 16, 128), 1.3, Vec2(-2.0, 0.5));
  EXPECT_LE(max_point_gap(normalize(moved), make_circle(1.0, 16, 128)), 1e-12);
}

TEST(Normalize, ClockwiseInputIsReoriented) {
  const Curve c = make_circle(1.0, 16, 128);
  const Curve cw(c.x().reflected(), c.y().reflected(), 128);
  EXPECT_LT(enclosed_area(cw), 0.0);
  const Curve out = normalize(cw);
  EXPECT_GT(enclosed_area(out), 0.0);
  EXPECT_LE(max_point_gap(out, c), 1e-12);
}

TEST(Normalize, IdempotentSpeedUniformAndPinned) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    // 64 modes resolve the arclength reparameterization of these inputs
    const auto rho = random_radial_perturbation(rng, 0.05, 2, 6);
    const Curve raw = perturbed_circle(rho, 64, 512);
    const Curve once = normalize(raw);
    const Curve twice = normalize(once);
    EXPECT_LE(sup_distance(once, twice), 1e-10);
    EXPECT_LE(speed_deviation(once), 1e-8);
    EXPECT_NEAR((once.evaluate(0.0) - Vec2(1, 0)).norm(), 0.0, 1e-12);
    const Vec2 d1 = once.evaluate_d1(0.0);
    EXPECT_NEAR(d1.x(), 0.0, 1e-12);
    EXPECT_GT(d1.y(), 0.0);
    EXPECT_NEAR(std::abs(enclosed_area(once)), std::abs(enclosed_area(raw)), 1e-10);
  }
}

TEST(Normalize, SelfIntersectingCurveRejected) {
  const Curve eight = from_function([](double t) { return Vec2(std::cos(t), std::sin(2 * t)); }, 8, 128);
  try {
    normalize(eight);
    FAIL() << "expected an embedding error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Embedding);
  }
}

TEST(Normalize, ZeroSpeedPointRejected) {
  // cardioid: simple closed curve with a cusp at φ = 0
  const Curve cardioid = from_function(
      [](double t) { return Vec2(2 * std::cos(t) - std::cos(2 * t), 2 * std::sin(t) - std::sin(2 * t)); }, 8, 256);
  try {
    normalize(cardioid);
    FAIL() << "expected a degenerate-curve error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCurve);
  }
}

TEST(Curve, EnclosedAreaMatchesShoelace) {
  std::mt19937_64 rng(5);
  const Curve c = random_admissible_curve(rng, 0.05, 32, 512);
  const double polygon = oracles::shoelace(c.sample(8192));
  EXPECT_NEAR(enclosed_area(c), polygon, 1e-6);
}

TEST(Curve, TransformsActOnPoints) {
  std::mt19937_64 rng(8);
  const Curve c = random_admissible_curve(rng, 0.05, 16, 128);
  const Curve moved = rigid_motion(c, 0.4, Vec2(1.0, 2.0));
  const Curve big = scaled(c, 3.0);
  const Curve shifted = reparam_shift(c, 0.25);
  for (double phi : {0.0, 1.0, 3.0}) {
    const Vec2 p = c.evaluate(phi);
    const Vec2 rotated(std::cos(0.4) * p.x() - std::sin(0.4) * p.y(), std::sin(0.4) * p.x() + std::cos(0.4) * p.y());
    EXPECT_NEAR((moved.evaluate(phi) - rotated - Vec2(1.0, 2.0)).norm(), 0.0, 1e-13);
    EXPECT_NEAR((big.evaluate(phi) - 3.0 * p).norm(), 0.0, 1e-13);
    EXPECT_NEAR((shifted.evaluate(phi) - c.evaluate(phi + 0.25)).norm(), 0.0, 1e-13);
  }
  EXPECT_NEAR(big.speed(), 3.0 * c.speed(), 1e-12);
}
