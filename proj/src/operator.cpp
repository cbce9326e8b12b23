#include "circinv/operator.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>

#include "circinv/derivative.hpp"
#include "circinv/error.hpp"
#include "circinv/tangent.hpp"

namespace circinv {

namespace {

int mode_of(int index) { return (index + 1) / 2; }

// Mode count needed to hold σ exactly; trailing coefficients below
// round-off are dropped so the linearization stays small.
VectorField trimmed_field(const VectorField& f) {
  double peak = 0.0;
  for (const auto* s : {&f.x, &f.y}) {
    for (const auto& c : s->nonneg()) peak = std::max(peak, std::abs(c));
  }
  int last = f.n_modes();
  while (last > 0 && std::abs(f.x.coeff(last)) <= 1e-17 * peak && std::abs(f.y.coeff(last)) <= 1e-17 * peak) --last;
  return {f.x.resized(last), f.y.resized(last)};
}

}  // namespace

int real_basis_size(int n_modes) { return 2 * n_modes + 1; }

std::string real_basis_label(int index) {
  if (index == 0) return "0";
  return std::to_string(mode_of(index)) + (index % 2 == 1 ? "c" : "s");
}

TrigSeries real_basis_function(int index) {
  const int j = mode_of(index);
  std::vector<cplx> c(static_cast<std::size_t>(j) + 1, cplx{0.0, 0.0});
  if (index == 0) {
    c[0] = {1.0, 0.0};
  } else if (index % 2 == 1) {
    c[static_cast<std::size_t>(j)] = {0.5, 0.0};
  } else {
    c[static_cast<std::size_t>(j)] = {0.0, -0.5};
  }
  return TrigSeries(std::move(c));
}

Eigen::VectorXd real_coefficients(const TrigSeries& f, int n_modes) {
  Eigen::VectorXd out(real_basis_size(n_modes));
  out(0) = f.mean();
  for (int j = 1; j <= n_modes; ++j) {
    out(2 * j - 1) = f.cos_coeff(j);
    out(2 * j) = f.sin_coeff(j);
  }
  return out;
}

TrigSeries from_real_coefficients(const Eigen::VectorXd& coeffs) {
  const int n = static_cast<int>(coeffs.size() - 1) / 2;
  std::vector<double> cs(static_cast<std::size_t>(n)), sn(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    cs[static_cast<std::size_t>(j - 1)] = coeffs(2 * j - 1);
    sn[static_cast<std::size_t>(j - 1)] = coeffs(2 * j);
  }
  return TrigSeries::from_cos_sin(coeffs(0), cs, sn);
}

int BasisDescriptor::size() const {
  const int block = real_basis_size(n_modes);
  return kind == BasisKind::TangentFull ? 2 * block : block;
}

std::string BasisDescriptor::label(int column) const {
  const int block = real_basis_size(n_modes);
  if (kind == BasisKind::TangentFull) {
    return (column < block ? "a" : "b") + real_basis_label(column % block);
  }
  return "a" + real_basis_label(column);
}

OperatorMatrix assemble_operator(const Curve& curve, double r, const BasisDescriptor& basis, int output_modes) {
  const char* op = "derivative::assemble_operator";
  if (basis.n_modes < 1) throw Error(ErrorKind::Parameter, op, "basis needs at least one mode");
  const int m = curve.grid_size();
  if (output_modes < 0) output_modes = basis.n_modes;
  if (2 * std::max(output_modes, basis.n_modes) >= m) {
    throw Error(ErrorKind::Parameter, op, "grid too coarse for the requested modes");
  }

  const int block = real_basis_size(basis.n_modes);
  const auto d1 = curve.sample_derivative(m, 1);
  std::vector<VectorField> fields;
  fields.reserve(static_cast<std::size_t>(basis.size()));
  for (int col = 0; col < basis.size(); ++col) {
    const PeriodicFn f = PeriodicFn::from_series(real_basis_function(col % block), m);
    std::vector<Vec2> sigma(static_cast<std::size_t>(m));
    if (basis.kind == BasisKind::NormalLifted) {
      sigma = tangential_completion(f, curve).samples();
    } else {
      const bool normal = col < block;
      for (int i = 0; i < m; ++i) {
        const Vec2& t = d1[static_cast<std::size_t>(i)];
        sigma[static_cast<std::size_t>(i)] = f[i] * (normal ? perp(t) : t);
      }
    }
    fields.push_back(trimmed_field(VectorField::from_samples(sigma)));
  }
  int field_modes = 0;
  for (const auto& f : fields) field_modes = std::max(field_modes, f.n_modes());

  const Linearization lin(curve, r, field_modes);
  const Eigen::MatrixXd values = lin.apply_many(fields);

  OperatorMatrix out;
  out.basis = basis;
  out.output_modes = output_modes;
  out.entries.resize(real_basis_size(output_modes), basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    std::vector<double> column(values.col(col).data(), values.col(col).data() + m);
    out.entries.col(col) = real_coefficients(TrigSeries::from_samples(column), output_modes);
  }
  return out;
}

Eigen::MatrixXd normal_constraints(const BasisDescriptor& basis) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, basis.size());
  c(0, 0) = 1.0;
  for (int j = 1; j <= basis.n_modes; ++j) {
    c(0, 2 * j - 1) = 1.0;  // cos(j·0)
    c(1, 2 * j) = j;        // d/dφ sin(jφ) at 0
  }
  return c;
}

Eigen::MatrixXd constraint_null_space(const BasisDescriptor& basis) {
  const Eigen::MatrixXd c = normal_constraints(basis);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(c.transpose());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(c.cols(), c.cols());
  return q.rightCols(c.cols() - c.rows());
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& matrix) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(matrix).singularValues();
}

double injectivity_margin(const OperatorMatrix& op) {
  if (op.basis.kind != BasisKind::NormalLifted) {
    throw Error(ErrorKind::Parameter, "derivative::injectivity_margin", "margin is defined on the lifted normal basis");
  }
  const Eigen::MatrixXd z = constraint_null_space(op.basis);
  const Eigen::VectorXd sv = singular_values(op.entries * z);
  return sv(sv.size() - 1);
}

}  // namespace circinv
