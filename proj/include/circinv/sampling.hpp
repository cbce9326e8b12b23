#pragma once

#include <random>

#include "circinv/curve.hpp"
#include "circinv/periodic.hpp"

namespace circinv {

/// Radial perturbation ρ with modes min_mode..max_mode. Mode amplitudes
/// ‖(α_j, β_j)‖ sum to amplitude·u, u ~ U[0.5, 1], so ‖ρ‖_∞ ≤ amplitude.
TrigSeries random_radial_perturbation(std::mt19937_64& rng, double amplitude, int min_mode = 2, int max_mode = 8);

/// normalize((1 + ρ)(cos φ, sin φ)) for a random ρ as above.
Curve random_admissible_curve(std::mt19937_64& rng, double amplitude, int n_modes, int grid_size,
                              int min_mode = 2, int max_mode = 8);

/// Vector field with independent random coefficients in modes 0..max_mode,
/// scaled to ‖σ‖_∞ ≤ scale.
VectorField random_vector_field(std::mt19937_64& rng, int max_mode, double scale = 1.0);

/// Normal field with modes ≤ max_mode satisfying a(0) = ȧ(0) = 0.
PeriodicFn random_admissible_normal(std::mt19937_64& rng, int max_mode, int grid_size, double scale = 1.0);

}  // namespace circinv
