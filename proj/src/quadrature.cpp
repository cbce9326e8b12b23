#include "circinv/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace circinv {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

// Boost stores the nonnegative half of the symmetric node set.
double gl20(const std::function<double(double)>& f, double lo, double hi) {
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0.0) {
      sum += w[k] * f(mid);
    } else {
      sum += w[k] * (f(mid - half * x[k]) + f(mid + half * x[k]));
    }
  }
  return half * sum;
}

double refine(const std::function<double(double)>& f, double lo, double hi, double whole, double tol,
              int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = gl20(f, lo, mid);
  const double right = gl20(f, mid, hi);
  const double halves = left + right;
  if (depth <= 0 || std::abs(halves - whole) <= tol) return halves;
  return refine(f, lo, mid, left, 0.5 * tol, depth - 1) + refine(f, mid, hi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_gl20(const std::function<double(double)>& f, double lo, double hi) { return gl20(f, lo, hi); }

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                          int max_depth) {
  if (lo == hi) return 0.0;
  return refine(f, lo, hi, gl20(f, lo, hi), abs_tol, max_depth);
}

}  // namespace circinv
