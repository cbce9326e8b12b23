#include "circinv/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "circinv/error.hpp"

namespace circinv {

namespace {

using nlohmann::json;

json coeff_array(const TrigSeries& s, int n) {
  json arr = json::array();
  for (int j = -n; j <= n; ++j) {
    const cplx c = s.coeff(j);
    arr.push_back({c.real(), c.imag()});
  }
  return arr;
}

TrigSeries coeff_series(const json& arr, int n, const char* name) {
  const char* op = "io::load_curve";
  if (!arr.is_array() || static_cast<int>(arr.size()) != 2 * n + 1) {
    throw Error(ErrorKind::Io, op, std::string(name) + " must hold 2*n_modes+1 [re, im] pairs");
  }
  auto at = [&](int j) {
    const json& e = arr[static_cast<std::size_t>(j + n)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorKind::Io, op, std::string(name) + " entries must be [re, im] number pairs");
    }
    return cplx{e[0].get<double>(), e[1].get<double>()};
  };
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const cplx pos = at(j);
    const cplx neg = at(-j);
    const double scale = std::max({1.0, std::abs(pos), std::abs(neg)});
    if (std::abs(pos - std::conj(neg)) > 1e-12 * scale) {
      throw Error(ErrorKind::Io, op,
                  std::string(name) + " is not Hermitian at mode " + std::to_string(j) + " (curve must be real)");
    }
    c[static_cast<std::size_t>(j)] = pos;
  }
  if (std::abs(c[0].imag()) > 1e-12 * std::max(1.0, std::abs(c[0]))) {
    throw Error(ErrorKind::Io, op, std::string(name) + " has a complex mean");
  }
  return TrigSeries(std::move(c));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "io::write", "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

json curve_to_json(const Curve& curve) {
  const int n = curve.n_modes();
  return json{{"n_modes", n},
              {"coeff_x", coeff_array(curve.x(), n)},
              {"coeff_y", coeff_array(curve.y(), n)},
              {"grid_size", curve.grid_size()}};
}

Curve curve_from_json(const json& doc) {
  const char* op = "io::load_curve";
  if (!doc.is_object() || !doc.contains("n_modes") || !doc.contains("coeff_x") || !doc.contains("coeff_y") ||
      !doc.contains("grid_size")) {
    throw Error(ErrorKind::Io, op, "curve JSON needs n_modes, coeff_x, coeff_y and grid_size");
  }
  if (!doc["n_modes"].is_number_integer() || !doc["grid_size"].is_number_integer()) {
    throw Error(ErrorKind::Io, op, "n_modes and grid_size must be integers");
  }
  const int n = doc["n_modes"].get<int>();
  if (n < 1) throw Error(ErrorKind::Io, op, "n_modes must be at least 1");
  return Curve(coeff_series(doc["coeff_x"], n, "coeff_x"), coeff_series(doc["coeff_y"], n, "coeff_y"),
               doc["grid_size"].get<int>());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "io::read_json", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, "io::read_json", path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "io::write", "failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

void save_curve(const std::filesystem::path& path, const Curve& curve) { write_json_file(path, curve_to_json(curve)); }

Curve load_curve(const std::filesystem::path& path) { return curve_from_json(read_json_file(path)); }

void write_profile_csv(const std::filesystem::path& path, const InvariantProfile& profile) {
  std::ostringstream os;
  os << "phi,I_r,m,p\n";
  const int m = profile.values.grid_size();
  for (int i = 0; i < m; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / m;
    const auto& pair = profile.pairs[static_cast<std::size_t>(i)];
    os << format_double(phi) << ',' << format_double(profile.values[i]) << ',' << format_double(pair.m) << ','
       << format_double(pair.p) << '\n';
  }
  write_text_file(path, os.str());
}

json profile_to_json(const InvariantProfile& profile, int n_modes) {
  const int m = profile.values.grid_size();
  json values = json::array(), ms = json::array(), ps = json::array();
  for (int i = 0; i < m; ++i) {
    values.push_back(profile.values[i]);
    ms.push_back(profile.pairs[static_cast<std::size_t>(i)].m);
    ps.push_back(profile.pairs[static_cast<std::size_t>(i)].p);
  }
  return json{{"r", profile.r}, {"n_modes", n_modes}, {"grid_size", m}, {"values", values}, {"m", ms}, {"p", ps}};
}

void write_spectrum_csv(const std::filesystem::path& path, int n_modes, double theta) {
  std::ostringstream os;
  os << "j,d_j\n";
  for (int j = -n_modes; j <= n_modes; ++j) os << j << ',' << format_double(spectrum_d(j, theta)) << '\n';
  write_text_file(path, os.str());
}

void write_operator(const std::filesystem::path& csv_path, const std::filesystem::path& json_path,
                    const OperatorMatrix& op, double r) {
  std::ostringstream os;
  const auto& e = op.entries;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      if (j) os << ',';
      os << format_double(e(i, j));
    }
    os << '\n';
  }
  write_text_file(csv_path, os.str());
  json columns = json::array(), rows = json::array();
  for (int c = 0; c < op.basis.size(); ++c) columns.push_back(op.basis.label(c));
  for (int k = 0; k < real_basis_size(op.output_modes); ++k) rows.push_back(real_basis_label(k));
  write_json_file(json_path, json{{"r", r},
                                  {"basis", op.basis.kind == BasisKind::NormalLifted ? "normal_lifted" : "tangent_full"},
                                  {"n_modes", op.basis.n_modes},
                                  {"output_modes", op.output_modes},
                                  {"rows", e.rows()},
                                  {"cols", e.cols()},
                                  {"row_labels", rows},
                                  {"column_labels", columns}});
}

json trace_to_json(const std::vector<TraceEntry>& trace) {
  json arr = json::array();
  for (const auto& t : trace) arr.push_back({{"iter", t.iter}, {"residual", t.residual}, {"step_norm", t.step_norm}});
  return arr;
}

void write_stability(const std::filesystem::path& csv_path, const std::filesystem::path& json_path,
                     const StabilityReport& report) {
  std::ostringstream os;
  os << "invariant_distance,curve_distance,ratio\n";
  for (const auto& p : report.pairs) {
    os << format_double(p.invariant_distance) << ',' << format_double(p.curve_distance) << ','
       << format_double(p.ratio) << '\n';
  }
  write_text_file(csv_path, os.str());
  write_json_file(json_path, json{{"c_hat", report.c_hat},
                                  {"k", report.k},
                                  {"n_pairs", report.n_pairs},
                                  {"seed", report.seed},
                                  {"amplitude", report.amplitude},
                                  {"r", report.r},
                                  {"n_modes", report.n_modes},
                                  {"grid_size", report.grid_size}});
}

}  // namespace circinv
