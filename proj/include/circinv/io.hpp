#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/derivative.hpp"
#include "circinv/invariant.hpp"
#include "circinv/operator.hpp"
#include "circinv/reconstruct.hpp"
#include <json.hpp>

namespace circinv {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// {"n_modes": N, "coeff_x": [[re, im], …], "coeff_y": …, "grid_size": M}
/// with coefficients for modes −N..N. Reading checks Hermitian symmetry.
nlohmann::json curve_to_json(const Curve& curve);
Curve curve_from_json(const nlohmann::json& doc);
void save_curve(const std::filesystem::path& path, const Curve& curve);
Curve load_curve(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Pretty-printed JSON with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

/// CSV: phi,I_r,m,p. JSON mirror: {r, n_modes, grid_size, phi, values, m, p}.
void write_profile_csv(const std::filesystem::path& path, const InvariantProfile& profile);
nlohmann::json profile_to_json(const InvariantProfile& profile, int n_modes);

/// CSV: j,d_j for j = −n_modes..n_modes.
void write_spectrum_csv(const std::filesystem::path& path, int n_modes, double theta);

/// Dense CSV of entries; header JSON carries the basis descriptor.
void write_operator(const std::filesystem::path& csv_path, const std::filesystem::path& json_path,
                    const OperatorMatrix& op, double r);

nlohmann::json trace_to_json(const std::vector<TraceEntry>& trace);

/// CSV of (invariant_distance, curve_distance, ratio); JSON summary
/// {c_hat, k, n_pairs, seed, …}.
void write_stability(const std::filesystem::path& csv_path, const std::filesystem::path& json_path,
                     const StabilityReport& report);

/// Writes text, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace circinv
