#pragma once

#include <span>
#include <vector>

#include "circinv/fourier.hpp"

namespace circinv {

/// Real function on S¹ held both as samples on the uniform grid φ_i = 2πi/M
/// and as its Fourier series. The two views are kept consistent on
/// construction.
class PeriodicFn {
 public:
  PeriodicFn() = default;

  /// Keeps every mode the grid resolves, so sample() reproduces the input.
  static PeriodicFn from_samples(std::vector<double> samples);
  /// Samples a series on an M-point grid (M > 2·modes).
  static PeriodicFn from_series(TrigSeries series, int grid_size);

  int grid_size() const { return static_cast<int>(samples_.size()); }
  std::span<const double> samples() const { return samples_; }
  double operator[](int i) const { return samples_[static_cast<std::size_t>(i)]; }
  const TrigSeries& series() const { return series_; }
  double operator()(double phi) const { return series_(phi); }

  /// Re-expresses the function on a different grid through its series;
  /// modes the new grid cannot resolve are dropped.
  PeriodicFn on_grid(int grid_size) const;

  double sup_norm() const;
  /// max_{j≤k} sup_i |f^{(j)}(φ_i)| with spectral derivatives.
  double ck_norm(int k) const;

 private:
  std::vector<double> samples_;
  TrigSeries series_;
};

PeriodicFn operator-(const PeriodicFn& a, const PeriodicFn& b);

}  // namespace circinv
