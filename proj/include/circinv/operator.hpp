#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/periodic.hpp"

namespace circinv {

/// Real Fourier basis ordered 0, 1c, 1s, 2c, 2s, … up to n_modes.
int real_basis_size(int n_modes);
std::string real_basis_label(int index);
/// Value of basis function `index` as a series.
TrigSeries real_basis_function(int index);
/// Coordinates of f in the real basis (mean, cos, sin coefficients).
Eigen::VectorXd real_coefficients(const TrigSeries& f, int n_modes);
TrigSeries from_real_coefficients(const Eigen::VectorXd& coeffs);

enum class BasisKind {
  /// Normal modes a_k, each completed to a tangent field by the
  /// curvature-driven tangential part (b from ḃ = ḃ(0) − aκc_γ).
  NormalLifted,
  /// Normal modes a_k·γ̇^⊥ followed by tangential modes b_k·γ̇.
  TangentFull,
};

struct BasisDescriptor {
  BasisKind kind = BasisKind::NormalLifted;
  int n_modes = 32;

  int size() const;
  std::string label(int column) const;
};

/// Columns: I_r'[γ] applied to the basis fields. Rows: real Fourier
/// coefficients of the output up to output_modes.
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  BasisDescriptor basis;
  int output_modes = 0;
};

/// output_modes < 0 uses basis.n_modes (square normal block).
OperatorMatrix assemble_operator(const Curve& curve, double r, const BasisDescriptor& basis, int output_modes = -1);

/// Rows a(0) and ȧ(0) as linear functionals on the normal block.
Eigen::MatrixXd normal_constraints(const BasisDescriptor& basis);

/// Orthonormal basis of the null space of the constraints.
Eigen::MatrixXd constraint_null_space(const BasisDescriptor& basis);

Eigen::VectorXd singular_values(const Eigen::MatrixXd& matrix);

/// Smallest singular value of the operator restricted to fields with
/// a(0) = ȧ(0) = 0.
double injectivity_margin(const OperatorMatrix& op);

}  // namespace circinv
