#include "circinv/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "circinv/error.hpp"

namespace circinv {

namespace {

TrigSeries random_series(std::mt19937_64& rng, int max_mode) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> cs(static_cast<std::size_t>(max_mode)), sn(static_cast<std::size_t>(max_mode));
  const double a0 = gauss(rng);
  for (int j = 0; j < max_mode; ++j) {
    // decay keeps the fields smooth
    const double w = 1.0 / (1.0 + j);
    cs[static_cast<std::size_t>(j)] = w * gauss(rng);
    sn[static_cast<std::size_t>(j)] = w * gauss(rng);
  }
  return TrigSeries::from_cos_sin(a0, cs, sn);
}

double coefficient_bound(const TrigSeries& s) {
  double sum = std::abs(s.mean());
  for (int j = 1; j <= s.n_modes(); ++j) sum += 2.0 * std::abs(s.coeff(j));
  return sum;
}

}  // namespace

TrigSeries random_radial_perturbation(std::mt19937_64& rng, double amplitude, int min_mode, int max_mode) {
  if (min_mode < 1 || max_mode < min_mode) {
    throw Error(ErrorKind::Parameter, "sampling::random_radial_perturbation", "need 1 <= min_mode <= max_mode");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  std::vector<double> cs(static_cast<std::size_t>(max_mode), 0.0), sn(static_cast<std::size_t>(max_mode), 0.0);
  double total = 0.0;
  for (int j = min_mode; j <= max_mode; ++j) {
    const auto k = static_cast<std::size_t>(j - 1);
    cs[k] = gauss(rng);
    sn[k] = gauss(rng);
    total += std::hypot(cs[k], sn[k]);
  }
  const double scale = amplitude * unit(rng) / total;
  for (auto& v : cs) v *= scale;
  for (auto& v : sn) v *= scale;
  return TrigSeries::from_cos_sin(0.0, cs, sn);
}

Curve random_admissible_curve(std::mt19937_64& rng, double amplitude, int n_modes, int grid_size, int min_mode,
                              int max_mode) {
  const TrigSeries rho = random_radial_perturbation(rng, amplitude, min_mode, max_mode);
  return normalize(perturbed_circle(rho, n_modes, grid_size));
}

VectorField random_vector_field(std::mt19937_64& rng, int max_mode, double scale) {
  TrigSeries x = random_series(rng, max_mode);
  TrigSeries y = random_series(rng, max_mode);
  const double bound = std::max(coefficient_bound(x), coefficient_bound(y));
  return {(scale / bound) * x, (scale / bound) * y};
}

PeriodicFn random_admissible_normal(std::mt19937_64& rng, int max_mode, int grid_size, double scale) {
  if (max_mode < 2) {
    throw Error(ErrorKind::Parameter, "sampling::random_admissible_normal", "need max_mode >= 2");
  }
  TrigSeries a = random_series(rng, max_mode);
  // Remove a(0) through the constant and ȧ(0) through sin φ.
  const double value0 = a(0.0);
  const double slope0 = a.derivative_at(0.0, 1);
  const std::vector<double> no_cos;
  a -= TrigSeries::constant(value0);
  a -= TrigSeries::from_cos_sin(0.0, no_cos, std::vector<double>{slope0});
  const double bound = coefficient_bound(a);
  return PeriodicFn::from_series((scale / bound) * a, grid_size);
}

}  // namespace circinv
