#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "circinv/error.hpp"
#include "circinv/io.hpp"
#include "circinv/sampling.hpp"

using namespace circinv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("circinv_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double x = 1.228369698608757;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(CurveJson, LosslessRoundTrip) {
  std::mt19937_64 rng(9);
  const Curve c = random_admissible_curve(rng, 0.05, 32, 256);
  const fs::path dir = scratch_dir("roundtrip");
  save_curve(dir / "c.json", c);
  const Curve back = load_curve(dir / "c.json");
  EXPECT_EQ(back.n_modes(), c.n_modes());
  EXPECT_EQ(back.grid_size(), c.grid_size());
  for (int j = 0; j <= c.n_modes(); ++j) {
    EXPECT_EQ(back.x().coeff(j), c.x().coeff(j));
    EXPECT_EQ(back.y().coeff(j), c.y().coeff(j));
  }
  const auto doc = read_json_file(dir / "c.json");
  EXPECT_EQ(doc["coeff_x"].size(), static_cast<std::size_t>(2 * c.n_modes() + 1));
}

TEST(CurveJson, NonHermitianCoefficientsRejected) {
  auto doc = curve_to_json(make_circle(1.0, 4, 32));
  doc["coeff_x"][0][1] = 0.25;  // mode −4 no longer conjugate to mode 4
  try {
    curve_from_json(doc);
    FAIL() << "expected an io error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  auto missing = curve_to_json(make_circle(1.0, 4, 32));
  missing.erase("coeff_y");
  EXPECT_THROW(curve_from_json(missing), Error);
}

TEST(ProfileCsv, ColumnsAndRows) {
  const Curve c = make_circle(1.0, 8, 32);
  const auto prof = invariant_analytic(c, 1.0);
  const fs::path dir = scratch_dir("profile");
  write_profile_csv(dir / "p.csv", prof);
  std::istringstream in(slurp(dir / "p.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "phi,I_r,m,p");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 32);
  const auto doc = profile_to_json(prof, 8);
  EXPECT_EQ(doc["grid_size"], 32);
  EXPECT_EQ(doc["n_modes"], 8);
  EXPECT_EQ(doc["r"], 1.0);
}

TEST(SpectrumCsv, SymmetricRows) {
  const fs::path dir = scratch_dir("spectrum");
  write_spectrum_csv(dir / "s.csv", 4, 1.0);
  std::istringstream in(slurp(dir / "s.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "j,d_j");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows.front().substr(0, 3), "-4,");
  EXPECT_EQ(rows.front().substr(3), rows.back().substr(2));
}

TEST(JsonFile, UnreadablePathIsIoError) {
  try {
    read_json_file("/nonexistent/circinv/config.json");
    FAIL() << "expected an io error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}
