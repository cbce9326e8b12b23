#pragma once

#include <complex>
#include <span>
#include <vector>

namespace circinv {

using cplx = std::complex<double>;

/// e^{ijφ} for j = 0..n, written to out[0..n].
void fill_phasors(double phi, int n, cplx* out);

/// Forward DFT of real samples on the uniform grid φ_i = 2πi/M, normalized so
/// that f(φ_i) = Σ_k X_k e^{ikφ_i}. Returns X_0..X_{M-1}.
std::vector<cplx> dft_forward(std::span<const double> samples);

/// Real samples of the Hermitian trigonometric polynomial with nonnegative
/// coefficients c_0..c_N on an M-point grid. Requires M > 2N.
std::vector<double> dft_synthesize(std::span<const cplx> nonneg, int grid_size);

/// Real-valued trigonometric polynomial f(φ) = Σ_{|j|≤N} c_j e^{ijφ}, with
/// c_{-j} = conj(c_j). Only c_0..c_N are stored.
class TrigSeries {
 public:
  TrigSeries() : c_(1, cplx{0.0, 0.0}) {}
  explicit TrigSeries(std::vector<cplx> nonneg);

  /// Least-squares (= truncated DFT) fit to M uniform samples. n_modes < 0
  /// keeps every mode resolved by the grid, i.e. (M-1)/2.
  static TrigSeries from_samples(std::span<const double> samples, int n_modes = -1);
  static TrigSeries constant(double value);
  /// a_0 + Σ a_j cos(jφ) + b_j sin(jφ).
  static TrigSeries from_cos_sin(double a0, std::span<const double> cos_coeffs,
                                 std::span<const double> sin_coeffs);

  int n_modes() const { return static_cast<int>(c_.size()) - 1; }
  cplx coeff(int j) const;
  const std::vector<cplx>& nonneg() const { return c_; }
  double cos_coeff(int j) const;
  double sin_coeff(int j) const;
  double mean() const { return c_[0].real(); }

  double operator()(double phi) const { return derivative_at(phi, 0); }
  double derivative_at(double phi, int order) const;
  /// Evaluate with precomputed phasors e^{ijφ}, j = 0..n_modes().
  double eval_with(const cplx* phasors, int order = 0) const;

  TrigSeries derivative(int order = 1) const;
  /// Periodic antiderivative of f − mean(f), normalized to zero mean.
  TrigSeries antiderivative_zero_mean() const;
  /// f(φ + delta).
  TrigSeries shifted(double delta) const;
  /// f(−φ).
  TrigSeries reflected() const;
  /// Drop trailing modes with |c_j| ≤ rel_tol · max|c|.
  TrigSeries trimmed(double rel_tol) const;
  TrigSeries resized(int n_modes) const;

  std::vector<double> sample(int grid_size) const;

  TrigSeries& operator+=(const TrigSeries& other);
  TrigSeries& operator-=(const TrigSeries& other);
  TrigSeries& operator*=(double s);
  friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
  friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
  friend TrigSeries operator*(double s, TrigSeries a) { return a *= s; }

 private:
  std::vector<cplx> c_;
};

}  // namespace circinv
