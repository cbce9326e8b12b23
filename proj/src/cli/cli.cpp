#include "circinv/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "circinv/curve.hpp"
#include "circinv/derivative.hpp"
#include "circinv/error.hpp"
#include "circinv/invariance.hpp"
#include "circinv/invariant.hpp"
#include "circinv/io.hpp"
#include "circinv/operator.hpp"
#include "circinv/oracle.hpp"
#include "circinv/reconstruct.hpp"
#include "circinv/sampling.hpp"

namespace circinv::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"invariant",  "oracle-compare", "derivative-check", "spectrum",
                                            "injectivity", "reconstruct",   "stability",        "invariance-suite"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << v;
  return os.str();
}

std::mt19937_64 make_rng(const RunConfig& c) { return std::mt19937_64(c.seed); }

// Supplied curve (normalized onto the configured grid) or a random
// admissible one drawn from the seed.
Curve input_curve(const RunConfig& c, std::mt19937_64& rng, bool random_default) {
  if (c.curve) {
    const Curve loaded = load_curve(*c.curve);
    return normalize(Curve(loaded.x(), loaded.y(), c.grid_size));
  }
  if (random_default) return random_admissible_curve(rng, c.amplitude, c.n_modes, c.grid_size);
  return make_circle(1.0, c.n_modes, c.grid_size);
}

std::string cmd_invariant(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve curve = input_curve(c, rng, false);
  const auto profile = invariant_analytic(curve, c.r);
  write_profile_csv(c.out / "invariant.csv", profile);
  write_json_file(c.out / "invariant.json", profile_to_json(profile, curve.n_modes()));
  const auto s = profile.values.samples();
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return "invariant r=" + format_double(c.r) + " min=" + fmt(*lo) + " max=" + fmt(*hi) +
         " mean=" + fmt(profile.values.series().mean());
}

std::string cmd_oracle_compare(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve curve = input_curve(c, rng, true);
  const auto profile = invariant_analytic(curve, c.r);
  const auto oracle = oracle_profile(curve, c.r);
  std::ostringstream os;
  os << "phi,analytic,oracle,abs_diff\n";
  double worst = 0.0;
  for (int i = 0; i < curve.grid_size(); ++i) {
    const double d = std::abs(profile.values[i] - oracle[static_cast<std::size_t>(i)]);
    worst = std::max(worst, d);
    os << format_double(curve.grid_phi(i)) << ',' << format_double(profile.values[i]) << ','
       << format_double(oracle[static_cast<std::size_t>(i)]) << ',' << format_double(d) << '\n';
  }
  write_text_file(c.out / "oracle_compare.csv", os.str());
  const double tol = 1e-6 * c.r * c.r;
  write_json_file(c.out / "oracle_compare.json",
                  json{{"r", c.r}, {"max_abs_diff", worst}, {"tolerance", tol}, {"pass", worst <= tol},
                       {"seed", c.seed}, {"grid_size", c.grid_size}, {"n_modes", c.n_modes}});
  return "oracle-compare max_abs_diff=" + fmt(worst) + (worst <= tol ? " <= " : " > ") + fmt(tol);
}

std::string cmd_derivative_check(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve curve = input_curve(c, rng, true);
  const VectorField sigma = random_vector_field(rng, 8, 1.0);
  const PeriodicFn exact = frechet_derivative(curve, c.r, sigma);
  InvariantOptions tight;
  tight.quad_tol = 1e-15;
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4};
  std::vector<double> err;
  std::ostringstream os;
  os << "eps,rel_err\n";
  for (double e : eps) {
    const auto plus = invariant_analytic(add_field(curve, sigma, e), c.r, tight);
    const auto minus = invariant_analytic(add_field(curve, sigma, -e), c.r, tight);
    double worst = 0.0;
    for (int i = 0; i < curve.grid_size(); ++i) {
      worst = std::max(worst, std::abs((plus.values[i] - minus.values[i]) / (2.0 * e) - exact[i]));
    }
    err.push_back(worst / exact.sup_norm());
    os << format_double(e) << ',' << format_double(err.back()) << '\n';
  }
  const double slope = std::log10(err.front() / err.back()) / std::log10(eps.front() / eps.back());
  write_text_file(c.out / "derivative_check.csv", os.str());
  write_json_file(c.out / "derivative_check.json",
                  json{{"r", c.r}, {"seed", c.seed}, {"slope", slope}, {"rel_err_min_eps", err.back()}});
  return "derivative-check slope=" + fmt(slope) + " rel_err=" + fmt(err.back());
}

std::string cmd_spectrum(const RunConfig& c) {
  const double theta = theta_circle(c.r, 1.0);
  write_spectrum_csv(c.out / "spectrum.csv", c.n_modes, theta);
  double min_abs = std::numeric_limits<double>::infinity();
  for (int j = 2; j <= c.n_modes; ++j) min_abs = std::min(min_abs, std::abs(spectrum_d(j, theta)));
  write_json_file(c.out / "spectrum.json",
                  json{{"r", c.r}, {"theta", theta}, {"n_modes", c.n_modes}, {"d_0", spectrum_d(0, theta)},
                       {"min_abs_d_j_ge_2", c.n_modes >= 2 ? json(min_abs) : json(nullptr)}});
  return "spectrum theta=" + fmt(theta) + " d_0=" + fmt(spectrum_d(0, theta)) + " d_1=0" +
         (c.n_modes >= 2 ? " d_2=" + fmt(spectrum_d(2, theta)) + " min_abs_d=" + fmt(min_abs) : "");
}

std::string cmd_injectivity(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve curve = input_curve(c, rng, false);
  const OperatorMatrix op = assemble_operator(curve, c.r, {BasisKind::NormalLifted, c.n_modes});
  write_operator(c.out / "operator.csv", c.out / "operator.json", op, c.r);
  const Eigen::VectorXd sv = singular_values(op.entries);
  std::ostringstream os;
  os << "index,singular_value\n";
  int near_zero = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    os << i << ',' << format_double(sv(i)) << '\n';
    if (sv(i) < 1e-8) ++near_zero;
  }
  write_text_file(c.out / "singular_values.csv", os.str());
  const double margin = injectivity_margin(op);
  write_json_file(c.out / "injectivity.json",
                  json{{"r", c.r}, {"n_modes", c.n_modes}, {"margin", margin}, {"near_zero_unconstrained", near_zero}});
  return "injectivity margin=" + fmt(margin) + " near_zero_unconstrained=" + std::to_string(near_zero);
}

std::string cmd_reconstruct(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve truth = input_curve(c, rng, true);
  ReconstructionProblem problem;
  problem.target = invariant_analytic(truth, c.r);
  problem.r = c.r;
  problem.n_modes = truth.n_modes();
  problem.max_iter = c.max_iter;
  problem.tol_residual = c.tol_residual;
  const ReconstructionResult result = reconstruct(problem);
  const double error = sup_distance(result.curve, truth);
  write_json_file(c.out / "trace.json", trace_to_json(result.trace));
  save_curve(c.out / "reconstructed_curve.json", result.curve);
  write_json_file(c.out / "reconstruct.json",
                  json{{"r", c.r}, {"seed", c.seed}, {"iterations", result.trace.back().iter},
                       {"final_residual", result.trace.back().residual}, {"error_sup", error},
                       {"converged", result.converged}});
  return "reconstruct iterations=" + std::to_string(result.trace.back().iter) +
         " final_residual=" + fmt(result.trace.back().residual) + " error=" + fmt(error) +
         (result.converged ? " converged" : " not-converged");
}

std::string cmd_stability(const RunConfig& c) {
  const StabilityReport report =
      stability_estimate(c.pairs, c.amplitude, c.r, c.k, c.seed, c.n_modes, c.grid_size);
  write_stability(c.out / "stability.csv", c.out / "stability.json", report);
  return "stability c_hat=" + fmt(report.c_hat) + " pairs=" + std::to_string(report.n_pairs) +
         " k=" + std::to_string(report.k);
}

std::string cmd_invariance_suite(const RunConfig& c) {
  auto rng = make_rng(c);
  const Curve curve = input_curve(c, rng, true);
  const InvarianceReport rep = invariance_suite(curve, c.r);
  const double tol = 1e-9;
  const bool pass = rep.max() <= tol;
  write_json_file(c.out / "invariance.json",
                  json{{"r", c.r}, {"seed", c.seed}, {"rigid", rep.rigid}, {"reparam", rep.reparam},
                       {"scaling", rep.scaling}, {"tolerance", tol}, {"pass", pass}});
  return "invariance-suite rigid=" + fmt(rep.rigid) + " reparam=" + fmt(rep.reparam) + " scaling=" +
         fmt(rep.scaling) + (pass ? " pass" : " FAIL");
}

template <typename T>
void from_file(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  try {
    target = doc[key].get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw UsageError("unknown command '" + c.command + "'");
  }
  if (!(c.r > 0.0) || !std::isfinite(c.r)) throw UsageError("--r must be positive");
  if (c.n_modes < 1) throw UsageError("--modes must be at least 1");
  if (c.grid_size < 4 * c.n_modes) throw UsageError("--grid must be at least 4 * --modes");
  if (c.k < 0) throw UsageError("--k must be nonnegative");
  if (c.pairs < 1) throw UsageError("--pairs must be positive");
  if (c.max_iter < 0) throw UsageError("--max-iter must be nonnegative");
  if (!(c.amplitude >= 0.0)) throw UsageError("--amplitude must be nonnegative");
}

void print_error(std::ostream& err, const std::string& kind, const std::string& op, const std::string& message) {
  err << json{{"error", kind}, {"operation", op}, {"message", message}}.dump() << '\n';
}

}  // namespace

std::string execute(const RunConfig& c) {
  std::filesystem::create_directories(c.out);
  if (c.command == "invariant") return cmd_invariant(c);
  if (c.command == "oracle-compare") return cmd_oracle_compare(c);
  if (c.command == "derivative-check") return cmd_derivative_check(c);
  if (c.command == "spectrum") return cmd_spectrum(c);
  if (c.command == "injectivity") return cmd_injectivity(c);
  if (c.command == "reconstruct") return cmd_reconstruct(c);
  if (c.command == "stability") return cmd_stability(c);
  return cmd_invariance_suite(c);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig defaults;
  CLI::App app{"Circular integral invariant of closed planar curves"};
  std::string command;
  double r = defaults.r;
  int modes = defaults.n_modes;
  int grid = defaults.grid_size;
  std::string curve, out_dir = defaults.out.string(), config_path;
  std::uint64_t seed = defaults.seed;
  int k = defaults.k;
  double amplitude = defaults.amplitude;
  int pairs = defaults.pairs;
  int max_iter = defaults.max_iter;

  app.add_option("command", command, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--r", r, "Disk radius")->capture_default_str();
  app.add_option("--modes", modes, "Fourier modes per coordinate")->capture_default_str();
  app.add_option("--grid", grid, "Grid size M (>= 4 * modes)")->capture_default_str();
  app.add_option("--curve", curve, "Curve JSON file");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--k", k, "Derivative order of the C^k norms")->capture_default_str();
  app.add_option("--amplitude", amplitude, "Normal perturbation amplitude of random curves")->capture_default_str();
  app.add_option("--pairs", pairs, "Curve pairs for the stability estimate")->capture_default_str();
  app.add_option("--max-iter", max_iter, "Gauss-Newton iteration cap")->capture_default_str();
  app.add_option("--config", config_path, "JSON config file; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "UsageError", "cli::parse", e.what());
    return 2;
  }

  RunConfig config = defaults;
  try {
    if (!config_path.empty()) {
      const json doc = read_json_file(config_path);
      if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
      from_file(doc, "r", config.r);
      from_file(doc, "modes", config.n_modes);
      from_file(doc, "grid", config.grid_size);
      from_file(doc, "seed", config.seed);
      from_file(doc, "k", config.k);
      from_file(doc, "amplitude", config.amplitude);
      from_file(doc, "pairs", config.pairs);
      from_file(doc, "max-iter", config.max_iter);
      from_file(doc, "tol-residual", config.tol_residual);
      std::string path;
      if (doc.contains("curve")) {
        from_file(doc, "curve", path);
        config.curve = path;
      }
      if (doc.contains("out")) {
        from_file(doc, "out", path);
        config.out = path;
      }
    }
    config.command = command;
    if (app.count("--r")) config.r = r;
    if (app.count("--modes")) config.n_modes = modes;
    if (app.count("--grid")) config.grid_size = grid;
    if (app.count("--curve")) config.curve = curve;
    if (app.count("--out")) config.out = out_dir;
    if (app.count("--seed")) config.seed = seed;
    if (app.count("--k")) config.k = k;
    if (app.count("--amplitude")) config.amplitude = amplitude;
    if (app.count("--pairs")) config.pairs = pairs;
    if (app.count("--max-iter")) config.max_iter = max_iter;
    validate(config);
  } catch (const UsageError& e) {
    print_error(err, "UsageError", "cli::config", e.what());
    return 2;
  } catch (const Error& e) {
    print_error(err, std::string(error_kind_name(e.kind())), e.operation(), e.what());
    return 2;
  }

  try {
    out << execute(config) << '\n';
    return 0;
  } catch (const Error& e) {
    print_error(err, std::string(error_kind_name(e.kind())), e.operation(), e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    print_error(err, "IoError", "cli::run", e.what());
    return 1;
  }
}

}  // namespace circinv::cli
