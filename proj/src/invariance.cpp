#include "circinv/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circinv/invariant.hpp"

namespace circinv {

namespace {

double max_diff(const PeriodicFn& a, const PeriodicFn& b, int shift, double factor) {
  const int m = a.grid_size();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) worst = std::max(worst, std::abs(a[i] - factor * b[(i + shift) % m]));
  return worst;
}

}  // namespace

double InvarianceReport::max() const { return std::max({rigid, reparam, scaling}); }

InvarianceReport invariance_suite(const Curve& curve, double r, const InvarianceCase& test_case) {
  const int m = curve.grid_size();
  const auto base = invariant_analytic(curve, r);
  InvarianceReport report;

  const auto moved = invariant_analytic(rigid_motion(curve, test_case.angle, test_case.translation), r);
  report.rigid = max_diff(moved.values, base.values, 0, 1.0);

  const int steps = ((test_case.shift_steps % m) + m) % m;
  const double delta = 2.0 * std::numbers::pi * steps / m;
  const auto shifted = invariant_analytic(reparam_shift(curve, delta), r);
  report.reparam = max_diff(shifted.values, base.values, steps, 1.0);

  const double t = test_case.scale;
  const auto big = invariant_analytic(scaled(curve, t), r);
  const auto small_r = invariant_analytic(curve, r / t);
  report.scaling = max_diff(big.values, small_r.values, 0, t * t);
  return report;
}

}  // namespace circinv
