#include "circinv/reconstruct.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "circinv/operator.hpp"
#include "circinv/parallel.hpp"
#include "circinv/sampling.hpp"
#include "circinv/tangent.hpp"

namespace circinv {

namespace {

constexpr int kMaxHalvings = 5;
constexpr int kStagnationSteps = 5;
constexpr double kStagnationRatio = 0.99;

struct Evaluated {
  Curve curve;
  PeriodicFn residual;
  double norm;
};

Evaluated evaluate(const Curve& curve, const ReconstructionProblem& problem) {
  const auto profile = invariant_analytic(curve, problem.r);
  PeriodicFn res = problem.target.values - profile.values;
  const double norm = res.sup_norm();
  return {curve, std::move(res), norm};
}

bool recoverable(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Topology:
    case ErrorKind::Embedding:
    case ErrorKind::Convergence:
    case ErrorKind::NearSingular:
    case ErrorKind::Consistency:
    case ErrorKind::DegenerateCurve:
      return true;
    default:
      return false;
  }
}

}  // namespace

ReconstructionResult reconstruct(const ReconstructionProblem& problem) {
  const char* op = "reconstruct::reconstruct";
  const int m = problem.target.values.grid_size();
  if (m < 8) throw Error(ErrorKind::Parameter, op, "target profile is empty");
  if (!(problem.damping > 0.0 && problem.damping <= 1.0)) {
    throw Error(ErrorKind::Parameter, op, "damping must lie in (0, 1]");
  }
  if (problem.max_iter < 0) throw Error(ErrorKind::Parameter, op, "max_iter must be nonnegative");
  const Curve start = problem.init ? *problem.init : make_circle(1.0, problem.n_modes, m);
  if (start.grid_size() != m) {
    throw Error(ErrorKind::Parameter, op,
                "init grid " + std::to_string(start.grid_size()) + " differs from target grid " + std::to_string(m));
  }
  const int n = start.n_modes();
  const int out_modes = m / 2 - 1;
  const BasisDescriptor basis{BasisKind::NormalLifted, n};
  const Eigen::MatrixXd null_space = constraint_null_space(basis);
  // rows are cos/sin coefficients; rescale so the LS norm is the L² norm
  Eigen::VectorXd row_weight = Eigen::VectorXd::Constant(real_basis_size(out_modes), std::sqrt(0.5));
  row_weight(0) = 1.0;

  Evaluated current = evaluate(normalize(start), problem);
  ReconstructionResult result{current.curve, {{0, current.norm, 0.0}}, false};
  int stagnant = 0;
  for (int iter = 1; iter <= problem.max_iter; ++iter) {
    if (current.norm <= problem.tol_residual) break;

    const OperatorMatrix jac = assemble_operator(current.curve, problem.r, basis, out_modes);
    const Eigen::VectorXd rhs = row_weight.asDiagonal() * real_coefficients(current.residual.series(), out_modes);
    const Eigen::MatrixXd reduced = row_weight.asDiagonal() * jac.entries * null_space;
    const Eigen::VectorXd coeffs = null_space * reduced.colPivHouseholderQr().solve(rhs);
    const PeriodicFn delta_a = PeriodicFn::from_series(from_real_coefficients(coeffs), m);
    const VectorField sigma = lift_normal(delta_a, current.curve).field();

    double lambda = problem.damping;
    std::optional<Evaluated> best;
    std::string last_failure;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      try {
        Evaluated cand = evaluate(normalize(add_field(current.curve, sigma, lambda)), problem);
        if (!best || cand.norm < best->norm) best = std::move(cand);
        if (best->norm <= current.norm) break;
      } catch (const Error& e) {
        if (!recoverable(e)) throw;
        last_failure = e.what();
      }
    }
    if (!best) {
      throw ReconstructionTopologyError("every damped step left the admissible set: " + last_failure, current.curve);
    }
    if (best->norm > current.norm) {
      // no damped step decreases the residual: stay put
      best = current;
    }
    const double step = sup_distance(best->curve, current.curve);
    const double ratio = current.norm > 0.0 ? best->norm / current.norm : 0.0;
    stagnant = ratio > kStagnationRatio ? stagnant + 1 : 0;
    current = std::move(*best);
    result.trace.push_back({iter, current.norm, step});
    result.curve = current.curve;
    if (stagnant >= kStagnationSteps && current.norm > problem.tol_residual) {
      throw Error(ErrorKind::NonConvergence, op,
                  "residual stagnated at " + std::to_string(current.norm) + " after " + std::to_string(iter) +
                      " iterations");
    }
  }
  result.converged = current.norm <= problem.tol_residual;
  return result;
}

StabilitySample stability_sample(const Curve& a, const Curve& b, double r, int k) {
  StabilitySample s;
  s.curve_distance = ck_distance(a, b, k);
  if (s.curve_distance < 1e-8) {
    throw Error(ErrorKind::Parameter, "reconstruct::stability_estimate", "curves of a pair coincide");
  }
  const auto ia = invariant_analytic(a, r);
  const auto ib = invariant_analytic(b, r);
  s.invariant_distance = (ia.values - ib.values).ck_norm(k);
  s.ratio = s.invariant_distance / s.curve_distance;
  return s;
}

StabilityReport stability_estimate(int n_pairs, double amplitude, double r, int k, std::uint64_t seed, int n_modes,
                                   int grid_size) {
  const char* op = "reconstruct::stability_estimate";
  if (n_pairs < 1) throw Error(ErrorKind::Parameter, op, "need at least one pair");
  if (k < 0) throw Error(ErrorKind::Parameter, op, "k must be nonnegative");
  StabilityReport report;
  report.k = k;
  report.n_pairs = n_pairs;
  report.seed = seed;
  report.amplitude = amplitude;
  report.r = r;
  report.n_modes = n_modes;
  report.grid_size = grid_size;
  report.pairs.resize(static_cast<std::size_t>(n_pairs));
  parallel_for(report.pairs.size(), [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::string last;
    for (int attempt = 0; attempt < 10; ++attempt) {
      try {
        const Curve a = random_admissible_curve(rng, amplitude, n_modes, grid_size);
        const Curve b = random_admissible_curve(rng, amplitude, n_modes, grid_size);
        report.pairs[i] = stability_sample(a, b, r, k);
        return;
      } catch (const Error& e) {
        last = e.what();
      }
    }
    throw Error(ErrorKind::Topology, op, "pair " + std::to_string(i) + " kept leaving the neighbourhood: " + last);
  });
  report.c_hat = std::numeric_limits<double>::infinity();
  for (const auto& p : report.pairs) report.c_hat = std::min(report.c_hat, p.ratio);
  return report;
}

}  // namespace circinv
