#include "circinv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/FFT>

#include "circinv/error.hpp"

namespace circinv {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

}  // namespace

void fill_phasors(double phi, int n, cplx* out) {
  out[0] = cplx{1.0, 0.0};
  if (n < 1) return;
  const cplx step = std::polar(1.0, phi);
  for (int j = 1; j <= n; ++j) {
    // re-anchor periodically so the recurrence error stays at a few ulps
    out[j] = (j % 16 == 0) ? std::polar(1.0, j * phi) : out[j - 1] * step;
  }
}

std::vector<cplx> dft_forward(std::span<const double> samples) {
  const auto m = static_cast<Eigen::Index>(samples.size());
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out(samples.size());
  fft_engine().fwd(out.data(), in.data(), m);
  const double scale = 1.0 / static_cast<double>(m);
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> dft_synthesize(std::span<const cplx> nonneg, int grid_size) {
  const int n = static_cast<int>(nonneg.size()) - 1;
  if (grid_size <= 2 * n) {
    throw Error(ErrorKind::Parameter, "fourier::synthesize",
                "grid of " + std::to_string(grid_size) + " points cannot resolve " +
                    std::to_string(n) + " modes");
  }
  std::vector<cplx> spec(static_cast<std::size_t>(grid_size), cplx{0.0, 0.0});
  spec[0] = cplx{nonneg[0].real(), 0.0};
  for (int j = 1; j <= n; ++j) {
    spec[static_cast<std::size_t>(j)] = nonneg[static_cast<std::size_t>(j)];
    spec[static_cast<std::size_t>(grid_size - j)] = std::conj(nonneg[static_cast<std::size_t>(j)]);
  }
  std::vector<cplx> out(static_cast<std::size_t>(grid_size));
  fft_engine().inv(out.data(), spec.data(), grid_size);
  std::vector<double> real(out.size());
  std::transform(out.begin(), out.end(), real.begin(), [](const cplx& v) { return v.real(); });
  return real;
}

TrigSeries::TrigSeries(std::vector<cplx> nonneg) : c_(std::move(nonneg)) {
  if (c_.empty()) c_.emplace_back(0.0, 0.0);
  c_[0] = cplx{c_[0].real(), 0.0};
}

TrigSeries TrigSeries::from_samples(std::span<const double> samples, int n_modes) {
  const int m = static_cast<int>(samples.size());
  if (m < 1) throw Error(ErrorKind::Parameter, "fourier::from_samples", "empty sample vector");
  const int max_modes = (m - 1) / 2;
  if (n_modes < 0) n_modes = max_modes;
  if (n_modes > max_modes) {
    throw Error(ErrorKind::Parameter, "fourier::from_samples",
                "requested " + std::to_string(n_modes) + " modes from " + std::to_string(m) +
                    " samples");
  }
  auto spec = dft_forward(samples);
  std::vector<cplx> c(spec.begin(), spec.begin() + n_modes + 1);
  return TrigSeries(std::move(c));
}

TrigSeries TrigSeries::constant(double value) { return TrigSeries({cplx{value, 0.0}}); }

TrigSeries TrigSeries::from_cos_sin(double a0, std::span<const double> cos_coeffs,
                                    std::span<const double> sin_coeffs) {
  const std::size_t n = std::max(cos_coeffs.size(), sin_coeffs.size());
  std::vector<cplx> c(n + 1, cplx{0.0, 0.0});
  c[0] = cplx{a0, 0.0};
  for (std::size_t j = 1; j <= n; ++j) {
    const double a = j - 1 < cos_coeffs.size() ? cos_coeffs[j - 1] : 0.0;
    const double b = j - 1 < sin_coeffs.size() ? sin_coeffs[j - 1] : 0.0;
    c[j] = cplx{0.5 * a, -0.5 * b};
  }
  return TrigSeries(std::move(c));
}

cplx TrigSeries::coeff(int j) const {
  const int aj = j < 0 ? -j : j;
  if (aj > n_modes()) return {0.0, 0.0};
  return j < 0 ? std::conj(c_[static_cast<std::size_t>(aj)]) : c_[static_cast<std::size_t>(aj)];
}

double TrigSeries::cos_coeff(int j) const {
  if (j == 0) return c_[0].real();
  return 2.0 * coeff(j).real();
}

double TrigSeries::sin_coeff(int j) const {
  if (j == 0) return 0.0;
  return -2.0 * coeff(j).imag();
}

double TrigSeries::derivative_at(double phi, int order) const {
  thread_local std::vector<cplx> ph;
  ph.resize(c_.size());
  fill_phasors(phi, n_modes(), ph.data());
  return eval_with(ph.data(), order);
}

double TrigSeries::eval_with(const cplx* phasors, int order) const {
  // Re((ij)^order c_j e^{ijφ}): i^order selects ±Re or ±Im of c_j e^{ijφ}
  double re = 0.0;
  double im = 0.0;
  for (int j = n_modes(); j >= 1; --j) {
    const cplx c = c_[static_cast<std::size_t>(j)];
    const cplx e = phasors[j];
    double scale = 1.0;
    for (int k = 0; k < order; ++k) scale *= j;
    re += scale * (c.real() * e.real() - c.imag() * e.imag());
    im += scale * (c.real() * e.imag() + c.imag() * e.real());
  }
  double acc = 0.0;
  switch (order % 4) {
    case 0: acc = re; break;
    case 1: acc = -im; break;
    case 2: acc = -re; break;
    default: acc = im; break;
  }
  acc *= 2.0;
  if (order == 0) acc += c_[0].real();
  return acc;
}

TrigSeries TrigSeries::derivative(int order) const {
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<cplx> c(c_.size());
  c[0] = order == 0 ? c_[0] : cplx{0.0, 0.0};
  for (int j = 1; j <= n_modes(); ++j) {
    c[static_cast<std::size_t>(j)] =
        kIPow[order % 4] * std::pow(static_cast<double>(j), order) * c_[static_cast<std::size_t>(j)];
  }
  return TrigSeries(std::move(c));
}

TrigSeries TrigSeries::antiderivative_zero_mean() const {
  std::vector<cplx> c(c_.size());
  c[0] = {0.0, 0.0};
  for (int j = 1; j <= n_modes(); ++j) {
    c[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j)] / cplx{0.0, static_cast<double>(j)};
  }
  return TrigSeries(std::move(c));
}

TrigSeries TrigSeries::shifted(double delta) const {
  std::vector<cplx> c(c_.size());
  std::vector<cplx> ph(c_.size());
  fill_phasors(delta, n_modes(), ph.data());
  for (std::size_t j = 0; j < c_.size(); ++j) c[j] = c_[j] * ph[j];
  return TrigSeries(std::move(c));
}

TrigSeries TrigSeries::reflected() const {
  std::vector<cplx> c(c_.size());
  for (std::size_t j = 0; j < c_.size(); ++j) c[j] = std::conj(c_[j]);
  return TrigSeries(std::move(c));
}

TrigSeries TrigSeries::trimmed(double rel_tol) const {
  double peak = 0.0;
  for (const auto& v : c_) peak = std::max(peak, std::abs(v));
  int last = n_modes();
  while (last > 0 && std::abs(c_[static_cast<std::size_t>(last)]) <= rel_tol * peak) --last;
  return resized(last);
}

TrigSeries TrigSeries::resized(int n_modes) const {
  std::vector<cplx> c(static_cast<std::size_t>(n_modes) + 1, cplx{0.0, 0.0});
  const std::size_t keep = std::min(c.size(), c_.size());
  std::copy_n(c_.begin(), keep, c.begin());
  return TrigSeries(std::move(c));
}

std::vector<double> TrigSeries::sample(int grid_size) const { return dft_synthesize(c_, grid_size); }

TrigSeries& TrigSeries::operator+=(const TrigSeries& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < other.c_.size(); ++j) c_[j] += other.c_[j];
  return *this;
}

TrigSeries& TrigSeries::operator-=(const TrigSeries& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < other.c_.size(); ++j) c_[j] -= other.c_[j];
  return *this;
}

TrigSeries& TrigSeries::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

}  // namespace circinv
