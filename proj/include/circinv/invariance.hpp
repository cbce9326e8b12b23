#pragma once

#include "circinv/curve.hpp"

namespace circinv {

struct InvarianceCase {
  double angle = 0.7;
  Vec2 translation{3.0, -2.0};
  /// Reparameterization shift in grid steps, Φ(φ) = φ + 2π·shift_steps/M.
  int shift_steps = 17;
  double scale = 2.0;
};

/// Max deviations, each a sup over the grid.
struct InvarianceReport {
  double rigid = 0.0;    // |I_r[g∘γ] − I_r[γ]|
  double reparam = 0.0;  // |I_r[γ∘Φ] − I_r[γ]∘Φ|
  double scaling = 0.0;  // |I_r[tγ] − t²·I_{r/t}[γ]|

  double max() const;
};

InvarianceReport invariance_suite(const Curve& curve, double r, const InvarianceCase& test_case = {});

}  // namespace circinv
