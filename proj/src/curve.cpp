#include "circinv/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "circinv/error.hpp"

namespace circinv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fine-grid factor used for arclength and speed quadrature
constexpr int kFineFactor = 8;

double polyline_length_speed(const VectorField& f, int fine) {
  const auto dx = f.x.derivative().sample(fine);
  const auto dy = f.y.derivative().sample(fine);
  double sum = 0.0;
  for (int k = 0; k < fine; ++k) sum += std::hypot(dx[static_cast<std::size_t>(k)], dy[static_cast<std::size_t>(k)]);
  return sum / fine;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

void embedded_or_throw(const Curve& curve, const std::string& op) {
  const int m = curve.grid_size();
  const auto pts = curve.sample(m);
  const double threshold = 1e-9 * curve.speed();
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Vec2& a = pts[static_cast<std::size_t>(i)];
    const Vec2& b = pts[static_cast<std::size_t>((i + 1) % m)];
    boxes[static_cast<std::size_t>(i)] = {std::min(a.x(), b.x()) - threshold, std::max(a.x(), b.x()) + threshold,
                                          std::min(a.y(), b.y()) - threshold, std::max(a.y(), b.y()) + threshold};
  }
  for (int i = 0; i < m; ++i) {
    const Box& bi = boxes[static_cast<std::size_t>(i)];
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const Box& bj = boxes[static_cast<std::size_t>(j)];
      if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
      const double dist = segment_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>((i + 1) % m)],
                                           pts[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>((j + 1) % m)]);
      if (dist < threshold) {
        throw Error(ErrorKind::Embedding, op,
                    "polygon edges " + std::to_string(i) + " and " + std::to_string(j) +
                        " intersect or nearly touch (distance " + std::to_string(dist) + ")");
      }
    }
  }
}

}  // namespace

VectorField VectorField::from_samples(std::span<const Vec2> samples, int n_modes) {
  std::vector<double> xs(samples.size());
  std::vector<double> ys(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xs[i] = samples[i].x();
    ys[i] = samples[i].y();
  }
  return {TrigSeries::from_samples(xs, n_modes), TrigSeries::from_samples(ys, n_modes)};
}

Curve::Curve(TrigSeries x, TrigSeries y, int grid_size)
    : field_{std::move(x), std::move(y)},
      n_modes_(std::max(field_.x.n_modes(), field_.y.n_modes())),
      grid_size_(grid_size),
      speed_(0.0) {
  if (n_modes_ < 1) {
    throw Error(ErrorKind::Parameter, "curve_core::curve", "a closed curve needs at least one Fourier mode");
  }
  if (grid_size_ < 4 * n_modes_) {
    throw Error(ErrorKind::Parameter, "curve_core::curve",
                "grid_size " + std::to_string(grid_size_) + " < 4 * n_modes " + std::to_string(n_modes_));
  }
  field_.x = field_.x.resized(n_modes_);
  field_.y = field_.y.resized(n_modes_);
  speed_ = polyline_length_speed(field_, kFineFactor * grid_size_);
}

double Curve::length() const { return kTwoPi * speed_; }

double Curve::grid_phi(int i) const { return kTwoPi * i / grid_size_; }

namespace {

const cplx* phasor_buffer(double phi, int n) {
  thread_local std::vector<cplx> buf;
  buf.resize(static_cast<std::size_t>(n) + 1);
  fill_phasors(phi, n, buf.data());
  return buf.data();
}

}  // namespace

Vec2 Curve::evaluate(double phi) const {
  const cplx* ph = phasor_buffer(phi, n_modes_);
  return {field_.x.eval_with(ph, 0), field_.y.eval_with(ph, 0)};
}

Vec2 Curve::evaluate_d1(double phi) const {
  const cplx* ph = phasor_buffer(phi, n_modes_);
  return {field_.x.eval_with(ph, 1), field_.y.eval_with(ph, 1)};
}

Vec2 Curve::evaluate_d2(double phi) const {
  const cplx* ph = phasor_buffer(phi, n_modes_);
  return {field_.x.eval_with(ph, 2), field_.y.eval_with(ph, 2)};
}

CurveJet Curve::jet(double phi) const { return jet_with(phasor_buffer(phi, n_modes_)); }

CurveJet Curve::jet_with(const cplx* phasors) const {
  const auto& cx = field_.x.nonneg();
  const auto& cy = field_.y.nonneg();
  // fused evaluation of orders 0..2: (ij)^k c_j e^{ijφ}
  cplx px{0, 0}, py{0, 0}, d1x{0, 0}, d1y{0, 0}, d2x{0, 0}, d2y{0, 0};
  for (int j = n_modes_; j >= 1; --j) {
    const auto sj = static_cast<std::size_t>(j);
    const cplx ex = cx[sj] * phasors[j];
    const cplx ey = cy[sj] * phasors[j];
    const double jd = j;
    px += ex;
    py += ey;
    d1x += jd * ex;
    d1y += jd * ey;
    d2x += jd * jd * ex;
    d2y += jd * jd * ey;
  }
  CurveJet out;
  out.point = {cx[0].real() + 2.0 * px.real(), cy[0].real() + 2.0 * py.real()};
  // multiplying by i takes the real part to −imag
  out.d1 = {-2.0 * d1x.imag(), -2.0 * d1y.imag()};
  out.d2 = {-2.0 * d2x.real(), -2.0 * d2y.real()};
  return out;
}

std::vector<Vec2> Curve::sample(int count) const { return sample_derivative(count, 0); }

std::vector<Vec2> Curve::sample_derivative(int count, int order) const {
  const auto xs = order == 0 ? field_.x.sample(count) : field_.x.derivative(order).sample(count);
  const auto ys = order == 0 ? field_.y.sample(count) : field_.y.derivative(order).sample(count);
  std::vector<Vec2> out(static_cast<std::size_t>(count));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {xs[k], ys[k]};
  return out;
}

Curve make_circle(double radius, int n_modes, int grid_size) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Parameter, "curve_core::make_circle", "radius must be positive");
  }
  if (n_modes < 1 || grid_size < 4 * n_modes) {
    throw Error(ErrorKind::Parameter, "curve_core::make_circle",
                "need n_modes >= 1 and grid_size >= 4 * n_modes");
  }
  std::vector<cplx> cx(static_cast<std::size_t>(n_modes) + 1, cplx{0, 0});
  std::vector<cplx> cy(static_cast<std::size_t>(n_modes) + 1, cplx{0, 0});
  cx[0] = {1.0 - radius, 0.0};
  cx[1] = {0.5 * radius, 0.0};   // R cos φ
  cy[1] = {0.0, -0.5 * radius};  // R sin φ
  return Curve(TrigSeries(std::move(cx)), TrigSeries(std::move(cy)), grid_size);
}

Curve perturbed_circle(const TrigSeries& rho, int n_modes, int grid_size) {
  if (rho.n_modes() + 1 > n_modes) {
    throw Error(ErrorKind::Parameter, "curve_core::perturbed_circle",
                "perturbation with " + std::to_string(rho.n_modes()) + " modes needs n_modes > " +
                    std::to_string(rho.n_modes()));
  }
  const auto r = rho.sample(grid_size);
  std::vector<double> xs(r.size()), ys(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double phi = kTwoPi * static_cast<double>(i) / grid_size;
    xs[i] = (1.0 + r[i]) * std::cos(phi);
    ys[i] = (1.0 + r[i]) * std::sin(phi);
  }
  return Curve(TrigSeries::from_samples(xs, n_modes), TrigSeries::from_samples(ys, n_modes), grid_size);
}

double curvature(const Curve& curve, double phi) {
  const CurveJet j = curve.jet(phi);
  const double c = curve.speed();
  return cross(j.d1, j.d2) / (c * c * c);
}

std::vector<double> curvature_samples(const Curve& curve) {
  const int m = curve.grid_size();
  const auto d1 = curve.sample_derivative(m, 1);
  const auto d2 = curve.sample_derivative(m, 2);
  const double c3 = std::pow(curve.speed(), 3);
  std::vector<double> out(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cross(d1[i], d2[i]) / c3;
  return out;
}

double enclosed_area(const Curve& curve) {
  // ½∮ cross(γ, γ̇) is a trigonometric polynomial of degree ≤ 2N; the
  // grid (≥ 4N points) integrates it exactly.
  const int m = curve.grid_size();
  const auto p = curve.sample(m);
  const auto d = curve.sample_derivative(m, 1);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += cross(p[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)]);
  return 0.5 * kTwoPi * sum / m;
}

double speed_deviation(const Curve& curve) {
  const auto d = curve.sample_derivative(curve.grid_size(), 1);
  double worst = 0.0;
  for (const auto& v : d) worst = std::max(worst, std::abs(v.norm() - curve.speed()));
  return worst / curve.speed();
}

void check_embedded(const Curve& curve) { embedded_or_throw(curve, "curve_core::check_embedded"); }

Curve normalize(const Curve& input) {
  const std::string op = "curve_core::normalize";
  embedded_or_throw(input, op);

  const Curve oriented = enclosed_area(input) < 0.0
                             ? Curve(input.x().reflected(), input.y().reflected(), input.grid_size())
                             : input;
  const int m = oriented.grid_size();
  const int n = oriented.n_modes();
  const int fine = kFineFactor * m;

  const auto dx = oriented.x().derivative().sample(fine);
  const auto dy = oriented.y().derivative().sample(fine);
  std::vector<double> speeds(static_cast<std::size_t>(fine));
  for (std::size_t k = 0; k < speeds.size(); ++k) speeds[k] = std::hypot(dx[k], dy[k]);
  const auto [lo, hi] = std::minmax_element(speeds.begin(), speeds.end());
  if (!(*lo > 1e-12 * *hi)) {
    throw Error(ErrorKind::DegenerateCurve, op, "curve has a (near) zero-speed point");
  }

  // s(t) = c̄ t + A(t) − A(0), with A the periodic antiderivative of the
  // speed's zero-mean part.
  const TrigSeries speed_series = TrigSeries::from_samples(speeds).trimmed(1e-17);
  const double cbar = speed_series.mean();
  const TrigSeries anti = speed_series.antiderivative_zero_mean();
  const double anti0 = anti(0.0);
  const auto anti_table = anti.sample(fine);
  std::vector<double> s_table(static_cast<std::size_t>(fine) + 1);
  for (int k = 0; k < fine; ++k) {
    s_table[static_cast<std::size_t>(k)] = cbar * kTwoPi * k / fine + anti_table[static_cast<std::size_t>(k)] - anti0;
  }
  s_table.back() = cbar * kTwoPi;

  std::vector<cplx> ph(static_cast<std::size_t>(anti.n_modes()) + 1);
  std::vector<Vec2> resampled(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double target = cbar * kTwoPi * i / m;
    const auto it = std::upper_bound(s_table.begin(), s_table.end(), target);
    const int k = std::clamp(static_cast<int>(it - s_table.begin()) - 1, 0, fine - 1);
    const double s_lo = s_table[static_cast<std::size_t>(k)];
    const double s_hi = s_table[static_cast<std::size_t>(k) + 1];
    double t = kTwoPi * (k + (target - s_lo) / (s_hi - s_lo)) / fine;
    // one cell of slack on each side: the root may sit on a cell boundary
    double t_lo = kTwoPi * (k - 1) / fine;
    double t_hi = kTwoPi * (k + 2) / fine;
    for (int iter = 0; iter < 30; ++iter) {
      fill_phasors(t, anti.n_modes(), ph.data());
      const double f = cbar * t + anti.eval_with(ph.data()) - anti0 - target;
      if (f > 0.0) t_hi = std::min(t_hi, t); else t_lo = std::max(t_lo, t);
      const double fp = speed_series.eval_with(ph.data());
      double next = t - f / fp;
      if (!(next >= t_lo && next <= t_hi)) next = 0.5 * (t_lo + t_hi);
      const double step = std::abs(next - t);
      t = next;
      if (step < 1e-15 * (1.0 + std::abs(t))) break;
    }
    resampled[static_cast<std::size_t>(i)] = oriented.evaluate(t);
  }

  VectorField field = VectorField::from_samples(resampled, n);
  Curve arc(field, m);

  const Vec2 d0 = arc.evaluate_d1(0.0);
  const double angle = 0.5 * std::numbers::pi - std::atan2(d0.y(), d0.x());
  const Curve rotated = rigid_motion(arc, angle, Vec2::Zero());
  const Vec2 base = rotated.evaluate(0.0);
  return rigid_motion(rotated, 0.0, Vec2(1.0, 0.0) - base);
}

Curve rigid_motion(const Curve& curve, double angle, const Vec2& translation) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  TrigSeries x = c * curve.x() - s * curve.y();
  TrigSeries y = s * curve.x() + c * curve.y();
  x += TrigSeries::constant(translation.x());
  y += TrigSeries::constant(translation.y());
  return Curve(std::move(x), std::move(y), curve.grid_size());
}

Curve scaled(const Curve& curve, double factor) {
  return Curve(factor * curve.x(), factor * curve.y(), curve.grid_size());
}

Curve reparam_shift(const Curve& curve, double delta) {
  return Curve(curve.x().shifted(delta), curve.y().shifted(delta), curve.grid_size());
}

Curve add_field(const Curve& curve, const VectorField& sigma, double t) {
  const int n = curve.n_modes();
  TrigSeries x = curve.x() + t * sigma.x.resized(std::min(n, sigma.x.n_modes()));
  TrigSeries y = curve.y() + t * sigma.y.resized(std::min(n, sigma.y.n_modes()));
  return Curve(x.resized(n), y.resized(n), curve.grid_size());
}

double sup_distance(const Curve& a, const Curve& b) { return ck_distance(a, b, 0); }

double ck_distance(const Curve& a, const Curve& b, int k) {
  const int m = std::max(a.grid_size(), b.grid_size());
  const TrigSeries dx = a.x() - b.x();
  const TrigSeries dy = a.y() - b.y();
  double worst = 0.0;
  for (int order = 0; order <= k; ++order) {
    const auto xs = dx.derivative(order).sample(m);
    const auto ys = dy.derivative(order).sample(m);
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::hypot(xs[i], ys[i]));
  }
  return worst;
}

}  // namespace circinv
