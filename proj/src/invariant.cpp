#include "circinv/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "circinv/error.hpp"
#include "circinv/parallel.hpp"
#include "circinv/quadrature.hpp"

namespace circinv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxNewton = 50;
constexpr int kChunk = 64;
constexpr double kTangency = 1e-10;

struct Root {
  double value;
  bool converged;
};

Root newton_root(const Curve& curve, const Vec2& center, double r, double seed) {
  const double tol = 1e-12 * r * r;
  double d = seed;
  for (int iter = 0; iter < kMaxNewton; ++iter) {
    const Vec2 diff = curve.evaluate(d) - center;
    const double g = diff.squaredNorm() - r * r;
    if (std::abs(g) <= tol) {
      // a few polishing steps; the residual check above is loose
      for (int k = 0; k < 3; ++k) {
        const Vec2 dd = curve.evaluate(d) - center;
        const double gg = dd.squaredNorm() - r * r;
        const double slope = 2.0 * dd.dot(curve.evaluate_d1(d));
        if (gg == 0.0 || slope == 0.0) break;
        const double next = d - gg / slope;
        const double gn = (curve.evaluate(next) - center).squaredNorm() - r * r;
        if (std::abs(gn) >= std::abs(gg)) break;
        d = next;
      }
      return {d, true};
    }
    const double slope = 2.0 * diff.dot(curve.evaluate_d1(d));
    if (slope == 0.0 || !std::isfinite(slope)) break;
    d -= g / slope;
  }
  return {d, false};
}

// Shift by a multiple of 2π into (anchor − π, anchor + π].
double lift_near(double value, double anchor) {
  return value - kTwoPi * std::round((value - anchor) / kTwoPi);
}

// First sign change of |γ(d) − c|² − r² walking from φ in direction dir.
std::optional<double> scan_seed(const Curve& curve, const Vec2& center, double r, double phi, int dir) {
  const int steps = 4 * curve.grid_size();
  const double h = kPi / steps;
  double prev = -r * r;
  for (int k = 1; k < steps; ++k) {
    const double d = phi + dir * k * h;
    const double g = (curve.evaluate(d) - center).squaredNorm() - r * r;
    if (prev < 0.0 && g >= 0.0) {
      double lo = d - dir * h;
      double hi = d;
      for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = (curve.evaluate(mid) - center).squaredNorm() - r * r;
        (gm < 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = g;
  }
  return std::nullopt;
}

double solve_side(const Curve& curve, const Vec2& center, double r, double phi, int dir,
                  std::optional<double> seed) {
  const char* op = "invariant::intersection_params";
  const double target = phi + dir * 0.5 * kPi;
  auto accept = [&](const Root& root) -> std::optional<double> {
    if (!root.converged) return std::nullopt;
    const double lifted = lift_near(root.value, target);
    if (dir > 0 ? (lifted > phi && lifted < phi + kPi) : (lifted < phi && lifted > phi - kPi)) return lifted;
    return std::nullopt;
  };
  bool converged_any = false;
  if (seed) {
    const Root root = newton_root(curve, center, r, *seed);
    converged_any = root.converged;
    if (auto v = accept(root)) return *v;
  }
  if (auto s = scan_seed(curve, center, r, phi, dir)) {
    const Root root = newton_root(curve, center, r, *s);
    converged_any = converged_any || root.converged;
    if (auto v = accept(root)) return *v;
  }
  if (!converged_any) {
    throw Error(ErrorKind::Convergence, op,
                "Newton iteration did not converge in " + std::to_string(kMaxNewton) + " steps at phi = " +
                    std::to_string(phi));
  }
  throw Error(ErrorKind::Topology, op,
              std::string(dir > 0 ? "next" : "previous") +
                  " intersection outside the lifting window at phi = " + std::to_string(phi));
}

// Sign changes of h(ψ) = ‖γ(ψ) − c‖ − r on the fine samples, refined by
// bisection on the series.
IntersectionCount count_crossings(const Curve& curve, const std::vector<Vec2>& fine, const Vec2& center,
                                  double r) {
  const int n = static_cast<int>(fine.size());
  const double h = kTwoPi / n;
  // the sign of ‖·‖² − r² matches that of ‖·‖ − r
  const double r2 = r * r;
  auto value = [&](double psi) { return (curve.evaluate(psi) - center).squaredNorm() - r2; };
  IntersectionCount out;
  double prev = (fine[static_cast<std::size_t>(n - 1)] - center).squaredNorm() - r2;
  for (int k = 0; k < n; ++k) {
    const double cur = (fine[static_cast<std::size_t>(k)] - center).squaredNorm() - r2;
    if ((prev < 0.0) != (cur < 0.0)) {
      ++out.count;
      double lo = (k - 1) * h;
      double hi = k * h;
      const bool lo_neg = prev < 0.0;
      for (int it = 0; it < 32; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((value(mid) < 0.0) == lo_neg ? lo : hi) = mid;
      }
      const double root = 0.5 * (lo + hi);
      const Vec2 diff = curve.evaluate(root) - center;
      const double slope = diff.dot(curve.evaluate_d1(root)) / std::max(diff.norm(), 1e-300);
      if (std::abs(slope) < kTangency) out.reliable = false;
    }
    prev = cur;
  }
  return out;
}

}  // namespace

double theta_circle(double r, double radius) {
  if (!(r > 0.0) || !(radius > 0.0)) {
    throw Error(ErrorKind::Parameter, "invariant::theta_circle", "r and R must be positive");
  }
  if (r >= 2.0 * radius) {
    throw Error(ErrorKind::Domain, "invariant::theta_circle",
                "r >= 2R: the disk contains the whole circle and the invariant is constant");
  }
  return std::acos(1.0 - r * r / (2.0 * radius * radius));
}

IntersectionPair intersection_params(const Curve& curve, double r, double phi, std::optional<IntersectionPair> hint) {
  if (!(r > 0.0)) throw Error(ErrorKind::Parameter, "invariant::intersection_params", "r must be positive");
  const Vec2 center = curve.evaluate(phi);
  std::optional<double> seed_p, seed_m;
  if (hint) {
    seed_p = hint->p;
    seed_m = hint->m;
  } else if (r < 2.0 * curve.speed()) {
    const double theta = theta_circle(r, curve.speed());
    seed_p = phi + theta;
    seed_m = phi - theta;
  }
  IntersectionPair out;
  out.p = solve_side(curve, center, r, phi, +1, seed_p);
  out.m = solve_side(curve, center, r, phi, -1, seed_m);
  return out;
}

std::vector<IntersectionPair> intersection_profile(const Curve& curve, double r) {
  const int m = curve.grid_size();
  std::vector<IntersectionPair> out(static_cast<std::size_t>(m));
  const int chunks = (m + kChunk - 1) / kChunk;
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const int begin = static_cast<int>(c) * kChunk;
    const int end = std::min(m, begin + kChunk);
    std::optional<IntersectionPair> hint;
    for (int i = begin; i < end; ++i) {
      const double phi = curve.grid_phi(i);
      if (hint) {
        const double step = kTwoPi / m;
        hint->m += step;
        hint->p += step;
      }
      out[static_cast<std::size_t>(i)] = intersection_params(curve, r, phi, hint);
      hint = out[static_cast<std::size_t>(i)];
    }
  });
  return out;
}

IntersectionCount intersection_count(const Curve& curve, double r, double phi) {
  const auto fine = curve.sample(8 * curve.grid_size());
  return count_crossings(curve, fine, curve.evaluate(phi), r);
}

std::vector<IntersectionCount> intersection_counts(const Curve& curve, double r) {
  const int m = curve.grid_size();
  const auto fine = curve.sample(8 * m);
  std::vector<IntersectionCount> out(static_cast<std::size_t>(m));
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = count_crossings(curve, fine, fine[8 * i], r);
  });
  return out;
}

void validate_neighborhood(const Curve& curve, double r) {
  const auto counts = intersection_counts(curve, r);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].count != 2 || !counts[i].reliable) {
      throw Error(ErrorKind::Topology, "invariant::validate_neighborhood",
                  "circle of radius " + std::to_string(r) + " about grid point " + std::to_string(i) + " has " +
                      std::to_string(counts[i].count) + (counts[i].reliable ? "" : " (tangential)") +
                      " crossings, need exactly 2");
    }
  }
}

InvariantProfile invariant_analytic(const Curve& curve, double r, const InvariantOptions& options) {
  const char* op = "invariant::invariant_analytic";
  if (!(r > 0.0)) throw Error(ErrorKind::Parameter, op, "r must be positive");
  validate_neighborhood(curve, r);
  InvariantProfile profile;
  profile.r = r;
  profile.pairs = intersection_profile(curve, r);
  const int m = curve.grid_size();
  std::vector<double> values(static_cast<std::size_t>(m));
  const double r2 = r * r;
  parallel_for(values.size(), [&](std::size_t i) {
    const IntersectionPair& pair = profile.pairs[i];
    const Vec2 center = curve.evaluate(curve.grid_phi(static_cast<int>(i)));
    const double chord = integrate_adaptive(
        [&](double psi) {
          const CurveJet j = curve.jet(psi);
          return cross(j.point - center, j.d1);
        },
        pair.m, pair.p, options.quad_tol);
    const Vec2 u = curve.evaluate(pair.p) - center;
    const Vec2 v = curve.evaluate(pair.m) - center;
    double arg = u.dot(v) / r2;
    if (std::abs(arg) > 1.0 + 1e-12) {
      throw Error(ErrorKind::Consistency, op,
                  "arccos argument " + std::to_string(arg) + " outside [-1, 1] at grid point " + std::to_string(i));
    }
    arg = std::clamp(arg, -1.0, 1.0);
    values[i] = 0.5 * chord + 0.5 * r2 * std::acos(arg);
  });
  profile.values = PeriodicFn::from_samples(std::move(values));
  return profile;
}

}  // namespace circinv
