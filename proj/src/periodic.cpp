#include "circinv/periodic.hpp"

#include <algorithm>
#include <cmath>

#include "circinv/error.hpp"

namespace circinv {

PeriodicFn PeriodicFn::from_samples(std::vector<double> samples) {
  PeriodicFn f;
  f.series_ = TrigSeries::from_samples(samples);
  f.samples_ = std::move(samples);
  return f;
}

PeriodicFn PeriodicFn::from_series(TrigSeries series, int grid_size) {
  PeriodicFn f;
  f.samples_ = series.sample(grid_size);
  f.series_ = std::move(series);
  return f;
}

PeriodicFn PeriodicFn::on_grid(int grid_size) const {
  if (grid_size == this->grid_size()) return *this;
  const int keep = std::min(series_.n_modes(), (grid_size - 1) / 2);
  return from_series(series_.resized(keep), grid_size);
}

double PeriodicFn::sup_norm() const {
  double worst = 0.0;
  for (double v : samples_) worst = std::max(worst, std::abs(v));
  return worst;
}

double PeriodicFn::ck_norm(int k) const {
  double worst = sup_norm();
  for (int order = 1; order <= k; ++order) {
    for (double v : series_.derivative(order).sample(grid_size())) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

PeriodicFn operator-(const PeriodicFn& a, const PeriodicFn& b) {
  if (a.grid_size() != b.grid_size()) {
    throw Error(ErrorKind::Parameter, "periodic::subtract", "grid sizes differ");
  }
  std::vector<double> out(static_cast<std::size_t>(a.grid_size()));
  for (int i = 0; i < a.grid_size(); ++i) out[static_cast<std::size_t>(i)] = a[i] - b[i];
  return PeriodicFn::from_samples(std::move(out));
}

}  // namespace circinv
