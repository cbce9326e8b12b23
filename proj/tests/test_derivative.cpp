#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circinv/derivative.hpp"
#include "circinv/error.hpp"
#include "circinv/sampling.hpp"

using namespace circinv;
constexpr double kPi = std::numbers::pi;

namespace {

// ∫_{−θ}^{θ} e^{ijs} ds − 2 sin θ: the circle operator applied to e^{ijφ},
// integrated by hand.
double convolution_eigenvalue(int j, double theta) {
  const double window = j == 0 ? 2 * theta : 2 * std::sin(j * theta) / j;
  return window - 2 * std::sin(theta);
}

PeriodicFn cos_mode(int j, int grid) {
  std::vector<double> cs(static_cast<std::size_t>(j), 0.0);
  cs.back() = 1.0;
  return PeriodicFn::from_series(TrigSeries::from_cos_sin(0.0, cs, {}), grid);
}

VectorField along(const Curve& c, const PeriodicFn& f, bool normal) {
  const auto d1 = c.sample_derivative(c.grid_size(), 1);
  std::vector<Vec2> s(d1.size());
  for (int i = 0; i < c.grid_size(); ++i) {
    const Vec2& t = d1[static_cast<std::size_t>(i)];
    s[static_cast<std::size_t>(i)] = f[i] * (normal ? perp(t) : t);
  }
  return VectorField::from_samples(s);
}

double rel_sup(const std::vector<double>& a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

}  // namespace

TEST(SpectrumD, Values) {
  const double theta = kPi / 3;
  EXPECT_EQ(spectrum_d(1, theta), 0.0);
  EXPECT_EQ(spectrum_d(-1, 0.4), 0.0);
  EXPECT_NEAR(spectrum_d(2, theta), -std::sqrt(3.0) / 2, 1e-15);
  for (int j = 0; j <= 40; ++j) {
    EXPECT_EQ(spectrum_d(-j, 1.1), spectrum_d(j, 1.1));
    if (j != 1) EXPECT_NEAR(spectrum_d(j, theta), convolution_eigenvalue(j, theta), 1e-15);
  }
}

TEST(CircleDerivative, ConstantCosineAndKernelModes) {
  const double theta = kPi / 3;
  const int grid = 128;
  const auto one = circle_derivative(PeriodicFn::from_samples(std::vector<double>(grid, 1.0)), theta);
  for (double v : one.samples()) EXPECT_NEAR(v, 2 * kPi / 3 - std::sqrt(3.0), 1e-14);
  for (int j = 2; j <= 10; ++j) {
    const auto a = cos_mode(j, grid);
    const auto out = circle_derivative(a, theta);
    for (int i = 0; i < grid; ++i) EXPECT_NEAR(out[i], convolution_eigenvalue(j, theta) * a[i], 1e-14);
  }
  const auto kernel = PeriodicFn::from_series(
      TrigSeries::from_cos_sin(0.0, std::vector<double>{0.7}, std::vector<double>{-1.3}), grid);
  const auto annihilated = circle_derivative(kernel, theta);
  for (double v : annihilated.samples()) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(FrechetDerivative, CosTwoNormalFieldOnUnitCircle) {
  const Curve c = make_circle(1.0, 32, 256);
  const auto a = cos_mode(2, 256);
  const double d2 = std::sin(2 * kPi / 3) - 2 * std::sin(kPi / 3);
  const auto raw = frechet_derivative(c, 1.0, along(c, a, true));
  const auto completed = frechet_derivative(c, 1.0, tangential_completion(a, c));
  for (int i = 0; i < 256; ++i) {
    EXPECT_NEAR(raw[i], d2 * a[i], 1e-12);
    EXPECT_NEAR(completed[i], d2 * a[i], 1e-12);
  }
}

TEST(FrechetDerivative, ZeroFieldGivesZero) {
  std::mt19937_64 rng(2);
  const Curve c = random_admissible_curve(rng, 0.05, 32, 256);
  const auto zero = frechet_derivative(c, 1.0, VectorField{});
  for (double v : zero.samples()) EXPECT_EQ(v, 0.0);
}

TEST(FrechetDerivative, AgreesWithCircleOperatorForRandomNormals) {
  std::mt19937_64 rng(12);
  const Curve c = make_circle(1.0, 32, 256);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_admissible_normal(rng, 12, 256);
    const auto full = frechet_derivative(c, 1.0, lift_normal(a, c));
    const auto conv = circle_derivative(a, kPi / 3);
    EXPECT_LE((full - conv).sup_norm(), 1e-9);
  }
}

TEST(FrechetDerivative, TangentialDirectionsAnnihilatedAtCircle) {
  std::mt19937_64 rng(13);
  const Curve c = make_circle(1.0, 32, 256);
  for (int trial = 0; trial < 5; ++trial) {
    const VectorField f = random_vector_field(rng, 10);
    const auto b = PeriodicFn::from_series(f.x, 256);
    EXPECT_LE(frechet_derivative(c, 1.0, along(c, b, false)).sup_norm(), 1e-9);
  }
}

TEST(FrechetDerivative, CentralDifferencesConvergeQuadratically) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 3; ++trial) {
    const Curve c = random_admissible_curve(rng, 0.05, 32, 256);
    const VectorField sigma = random_vector_field(rng, 8, 0.5);
    const double r = 1.0;
    const auto d = frechet_derivative(c, r, sigma);
    std::vector<double> errs;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto plus = invariant_analytic(add_field(c, sigma, eps), r).values;
      const auto minus = invariant_analytic(add_field(c, sigma, -eps), r).values;
      std::vector<double> fd(256);
      for (int i = 0; i < 256; ++i) fd[static_cast<std::size_t>(i)] = (plus[i] - minus[i]) / (2 * eps);
      errs.push_back(rel_sup(fd, d.samples()));
    }
    EXPECT_NEAR(std::log10(errs[0] / errs[1]), 2.0, 0.1);
    EXPECT_LE(errs[2], 1e-6);
  }
}

TEST(Linearization, MatchesTermByTermQuadrature) {
  std::mt19937_64 rng(15);
  const Curve c = random_admissible_curve(rng, 0.05, 32, 256);
  for (double r : {0.6, 1.3}) {
    const VectorField sigma = random_vector_field(rng, 12);
    const Linearization lin(c, r, 12);
    const auto fast = lin.apply(sigma);
    const auto slow = frechet_derivative(c, r, sigma);
    for (int i = 0; i < 256; ++i) EXPECT_NEAR(fast[static_cast<std::size_t>(i)], slow[i], 1e-11);
  }
}

TEST(SineInequality, NoVanishingEigenvalues) {
  const double third = kPi / 3;
  const auto at_third = sine_inequality_check(std::span<const double>(&third, 1), 64);
  EXPECT_TRUE(at_third.all_nonzero);
  EXPECT_GT(at_third.min_abs_d, 0.0);
  EXPECT_EQ(at_third.checked, 2 * 63);

  std::vector<double> grid;
  for (int k = 0; k < 100; ++k) grid.push_back(0.05 + (kPi - 0.1) * k / 99.0);
  EXPECT_TRUE(sine_inequality_check(grid, 64).all_nonzero);

  const double near_pi = kPi - 1e-3;
  const auto edge = sine_inequality_check(std::span<const double>(&near_pi, 1), 2);
  EXPECT_TRUE(edge.all_nonzero);
  EXPECT_GT(edge.min_abs_d, 0.0);
  // d_2 = sin 2θ − 2 sin θ ≈ −4(π − θ) near π
  EXPECT_NEAR(edge.min_abs_d, 4e-3, 1e-8);
}

TEST(SineInequality, PreconditionsEnforced) {
  const double theta = 1.0;
  EXPECT_THROW(sine_inequality_check(std::span<const double>(&theta, 1), 1), Error);
  const double bad = kPi;
  EXPECT_THROW(sine_inequality_check(std::span<const double>(&bad, 1), 4), Error);
}
