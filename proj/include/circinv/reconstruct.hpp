#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/error.hpp"
#include "circinv/invariant.hpp"

namespace circinv {

struct ReconstructionProblem {
  InvariantProfile target;
  double r = 1.0;
  /// Starting curve; the unit circle with n_modes modes when empty.
  std::optional<Curve> init;
  int n_modes = 32;
  int max_iter = 50;
  double tol_residual = 1e-9;
  double damping = 1.0;
};

struct TraceEntry {
  int iter = 0;
  double residual = 0.0;
  double step_norm = 0.0;
};

struct ReconstructionResult {
  Curve curve;
  std::vector<TraceEntry> trace;
  bool converged = false;
};

/// Raised when an iterate leaves the two-intersection neighbourhood (or
/// stops being embedded) and no damped step recovers it.
class ReconstructionTopologyError : public Error {
 public:
  ReconstructionTopologyError(const std::string& message, Curve last_valid)
      : Error(ErrorKind::Topology, "reconstruct::reconstruct", message), last_valid_(std::move(last_valid)) {}
  const Curve& last_valid() const { return last_valid_; }

 private:
  Curve last_valid_;
};

/// Damped Gauss–Newton in normal-field coordinates:
/// γ ← normalize(γ + λ·σ(δa)), δa the least-squares solution of
/// J·δa = target − I_r[γ] subject to a(0) = ȧ(0) = 0. The step is halved
/// (at most 5 times) while the residual sup-norm grows.
/// Throws NonConvergenceError after 5 consecutive steps with residual ratio
/// above 0.99, ReconstructionTopologyError as described above.
ReconstructionResult reconstruct(const ReconstructionProblem& problem);

struct StabilitySample {
  double invariant_distance = 0.0;  // ‖I_r[γ] − I_r[γ̃]‖_k
  double curve_distance = 0.0;      // ‖γ − γ̃‖_k
  double ratio = 0.0;
};

struct StabilityReport {
  std::vector<StabilitySample> pairs;
  double c_hat = 0.0;
  int k = 1;
  int n_pairs = 0;
  std::uint64_t seed = 0;
  double amplitude = 0.0;
  double r = 1.0;
  int n_modes = 0;
  int grid_size = 0;
};

/// One pair. Throws ParameterError when ‖γ − γ̃‖_k < 1e−8.
StabilitySample stability_sample(const Curve& a, const Curve& b, double r, int k);

/// Samples n_pairs pairs of random admissible curves (pair i drawn from its
/// own generator seeded with (seed, i)), resampling up to 10 times when a
/// curve leaves the neighbourhood.
StabilityReport stability_estimate(int n_pairs, double amplitude, double r, int k, std::uint64_t seed,
                                   int n_modes = 32, int grid_size = 512);

}  // namespace circinv
