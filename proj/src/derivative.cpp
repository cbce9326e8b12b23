#include "circinv/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "circinv/error.hpp"
#include "circinv/parallel.hpp"
#include "circinv/quadrature.hpp"

namespace circinv {

namespace {

constexpr double kSingular = 1e-10;

struct EndpointGeometry {
  Vec2 u, v, dp, dm;
  double inner_p, inner_m, q;
};

EndpointGeometry endpoint_geometry(const Curve& curve, double r, double phi, const IntersectionPair& pair,
                                   const char* op) {
  const Vec2 center = curve.evaluate(phi);
  EndpointGeometry g;
  g.u = curve.evaluate(pair.p) - center;
  g.v = curve.evaluate(pair.m) - center;
  g.dp = curve.evaluate_d1(pair.p);
  g.dm = curve.evaluate_d1(pair.m);
  g.inner_p = g.dp.dot(g.u);
  g.inner_m = g.dm.dot(g.v);
  const double r2 = r * r;
  const double w = g.u.dot(g.v);
  const double root2 = r2 * r2 - w * w;
  const double root = root2 > 0.0 ? std::sqrt(root2) : 0.0;
  const double floor = kSingular * r2;
  if (std::abs(g.inner_p) < floor || std::abs(g.inner_m) < floor || root < floor) {
    throw Error(ErrorKind::NearSingular, op,
                "transversality lost at phi = " + std::to_string(phi) + " (<g'(p), u> = " +
                    std::to_string(g.inner_p) + ", <g'(m), v> = " + std::to_string(g.inner_m) +
                    ", sqrt(r^4 - <u,v>^2) = " + std::to_string(root) + ")");
  }
  g.q = r2 / root;
  return g;
}

}  // namespace

PeriodicFn frechet_derivative(const Curve& curve, double r, const VectorField& sigma,
                              const InvariantOptions& options) {
  const char* op = "derivative::frechet_derivative";
  validate_neighborhood(curve, r);
  const auto pairs = intersection_profile(curve, r);
  const int m = curve.grid_size();
  std::vector<double> out(static_cast<std::size_t>(m));
  parallel_for(out.size(), [&](std::size_t i) {
    const double phi = curve.grid_phi(static_cast<int>(i));
    const IntersectionPair& pair = pairs[i];
    const EndpointGeometry g = endpoint_geometry(curve, r, phi, pair, op);
    const Vec2 s = sigma.at(phi);
    const Vec2 sp = sigma.at(pair.p);
    const Vec2 sm = sigma.at(pair.m);

    const double p_rate = (s - sp).dot(g.u) / g.inner_p;
    const double m_rate = (s - sm).dot(g.v) / g.inner_m;
    const double chord = integrate_adaptive(
        [&](double psi) { return sigma.at(psi).dot(perp(curve.evaluate_d1(psi))); }, pair.m, pair.p,
        options.quad_tol);

    double twice = 2.0 * chord;
    twice -= s.dot(perp(g.u - g.v));
    twice += g.u.dot(perp(sp)) - g.v.dot(perp(sm));
    twice += g.u.dot(perp(g.dp)) * p_rate - g.v.dot(perp(g.dm)) * m_rate;
    twice -= g.q * (p_rate * g.dp.dot(g.v) + (sp - s).dot(g.v) + g.u.dot(sm - s) + m_rate * g.u.dot(g.dm));
    out[i] = 0.5 * twice;
  });
  return PeriodicFn::from_samples(std::move(out));
}

PeriodicFn frechet_derivative(const Curve& curve, double r, const TangentField& sigma,
                              const InvariantOptions& options) {
  return frechet_derivative(curve, r, sigma.field(), options);
}

Linearization::Linearization(const Curve& curve, double r, int field_modes) : field_modes_(field_modes) {
  const char* op = "derivative::linearization";
  if (field_modes < 0) throw Error(ErrorKind::Parameter, op, "field_modes must be nonnegative");
  validate_neighborhood(curve, r);
  pairs_ = intersection_profile(curve, r);
  const int m = curve.grid_size();
  const int n = curve.n_modes();
  const int jmax = field_modes;
  kx_.resize(m, jmax + 1);
  ky_.resize(m, jmax + 1);

  const TrigSeries dx = curve.x().derivative();
  const TrigSeries dy = curve.y().derivative();
  // coefficient of e^{ilψ}, l = −n..n, stored at index l + n
  std::vector<cplx> cdx(static_cast<std::size_t>(2 * n + 1)), cdy(cdx.size());
  for (int l = -n; l <= n; ++l) {
    cdx[static_cast<std::size_t>(l + n)] = dx.coeff(l);
    cdy[static_cast<std::size_t>(l + n)] = dy.coeff(l);
  }

  parallel_for(static_cast<std::size_t>(m), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const double phi = curve.grid_phi(i);
    const IntersectionPair& pair = pairs_[row];
    const EndpointGeometry g = endpoint_geometry(curve, r, phi, pair, op);

    // 2I' = 2∫⟨σ, γ̇^⊥⟩ + ⟨σ(φ), α⟩ + ⟨σ(p), β⟩ + ⟨σ(m), δ⟩
    const double kp = g.u.dot(perp(g.dp)) - g.q * g.dp.dot(g.v);
    const double km = -g.v.dot(perp(g.dm)) - g.q * g.u.dot(g.dm);
    const Vec2 alpha = -perp(g.u - g.v) + g.q * (g.u + g.v) + (kp / g.inner_p) * g.u + (km / g.inner_m) * g.v;
    const Vec2 beta = -perp(g.u) - g.q * g.v - (kp / g.inner_p) * g.u;
    const Vec2 delta = perp(g.v) - g.q * g.u - (km / g.inner_m) * g.v;

    // E(k) = ∫_m^p e^{ikψ} dψ for k = −n..jmax+n
    const int kmax = jmax + n;
    std::vector<cplx> ep(static_cast<std::size_t>(kmax) + 1), em(ep.size()), ef(static_cast<std::size_t>(jmax) + 1);
    fill_phasors(pair.p, kmax, ep.data());
    fill_phasors(pair.m, kmax, em.data());
    fill_phasors(phi, jmax, ef.data());
    std::vector<cplx> e(static_cast<std::size_t>(kmax + n) + 1);
    for (int k = -n; k <= kmax; ++k) {
      cplx val;
      if (k == 0) {
        val = {pair.p - pair.m, 0.0};
      } else {
        const auto ak = static_cast<std::size_t>(std::abs(k));
        const cplx diff = k > 0 ? ep[ak] - em[ak] : std::conj(ep[ak]) - std::conj(em[ak]);
        val = diff / cplx{0.0, static_cast<double>(k)};
      }
      e[static_cast<std::size_t>(k + n)] = val;
    }
    for (int j = 0; j <= jmax; ++j) {
      cplx mom_x{0, 0}, mom_y{0, 0};  // ∫ ẋ e^{ijψ}, ∫ ẏ e^{ijψ}
      for (int l = -n; l <= n; ++l) {
        const cplx ek = e[static_cast<std::size_t>(j + l + n)];
        mom_x += cdx[static_cast<std::size_t>(l + n)] * ek;
        mom_y += cdy[static_cast<std::size_t>(l + n)] * ek;
      }
      const auto sj = static_cast<std::size_t>(j);
      const cplx ph = ef[sj];
      const cplx pp = ep[sj];
      const cplx pm = em[sj];
      // ⟨σ, γ̇^⊥⟩ = σx·ẏ − σy·ẋ
      kx_(i, j) = mom_y + 0.5 * (alpha.x() * ph + beta.x() * pp + delta.x() * pm);
      ky_(i, j) = -mom_x + 0.5 * (alpha.y() * ph + beta.y() * pp + delta.y() * pm);
    }
  });
}

std::vector<double> Linearization::apply(const VectorField& sigma) const {
  const Eigen::MatrixXd col = apply_many(std::span<const VectorField>(&sigma, 1));
  return std::vector<double>(col.data(), col.data() + col.size());
}

Eigen::MatrixXd Linearization::apply_many(std::span<const VectorField> fields) const {
  const auto cols = static_cast<Eigen::Index>(fields.size());
  Eigen::MatrixXcd cx = Eigen::MatrixXcd::Zero(field_modes_ + 1, cols);
  Eigen::MatrixXcd cy = Eigen::MatrixXcd::Zero(field_modes_ + 1, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const VectorField& f = fields[static_cast<std::size_t>(c)];
    if (f.n_modes() > field_modes_) {
      throw Error(ErrorKind::Parameter, "derivative::linearization",
                  "field has " + std::to_string(f.n_modes()) + " modes, linearization supports " +
                      std::to_string(field_modes_));
    }
    for (int j = 0; j <= field_modes_; ++j) {
      const double w = j == 0 ? 1.0 : 2.0;
      cx(j, c) = w * f.x.coeff(j);
      cy(j, c) = w * f.y.coeff(j);
    }
  }
  return (kx_ * cx + ky_ * cy).real();
}

PeriodicFn circle_derivative(const PeriodicFn& a, double theta) {
  const TrigSeries& s = a.series();
  std::vector<cplx> c(s.nonneg().size());
  const double local = 2.0 * std::sin(theta);
  for (int j = 0; j <= s.n_modes(); ++j) {
    const double conv = j == 0 ? 2.0 * theta : 2.0 * std::sin(j * theta) / j;
    c[static_cast<std::size_t>(j)] = (conv - local) * s.coeff(j);
  }
  return PeriodicFn::from_series(TrigSeries(std::move(c)), a.grid_size());
}

double spectrum_d(int j, double theta) {
  if (j == 0) return 2.0 * theta - 2.0 * std::sin(theta);
  if (j == 1 || j == -1) return 0.0;
  return 2.0 * std::sin(j * theta) / j - 2.0 * std::sin(theta);
}

SineInequalityReport sine_inequality_check(std::span<const double> thetas, int j_max) {
  const char* op = "derivative::sine_inequality_check";
  if (j_max < 2) throw Error(ErrorKind::Parameter, op, "j_max must be at least 2");
  SineInequalityReport report;
  report.min_abs_d = std::numeric_limits<double>::infinity();
  for (double theta : thetas) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
      throw Error(ErrorKind::Parameter, op, "theta must lie in (0, pi)");
    }
    for (int aj = 2; aj <= j_max; ++aj) {
      for (int j : {aj, -aj}) {
        const double d = std::abs(spectrum_d(j, theta));
        ++report.checked;
        if (!(d > 0.0)) report.all_nonzero = false;
        if (d < report.min_abs_d) {
          report.min_abs_d = d;
          report.argmin_j = j;
          report.argmin_theta = theta;
        }
      }
    }
  }
  return report;
}

}  // namespace circinv
