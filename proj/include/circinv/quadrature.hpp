#pragma once

#include <functional>

namespace circinv {

/// Adaptive Gauss–Legendre quadrature (20-point panels). A panel is accepted
/// when its estimate agrees with the sum over its two halves to within the
/// panel's share of abs_tol; the refined value is returned.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol = 1e-12, int max_depth = 30);

/// Fixed 20-point Gauss–Legendre rule on [lo, hi].
double integrate_gl20(const std::function<double(double)>& f, double lo, double hi);

}  // namespace circinv
