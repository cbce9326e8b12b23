#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "circinv/cli.hpp"
#include "circinv/io.hpp"
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "circinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = circinv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("circinv_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SpectrumCommand) {
  const fs::path dir = fresh_dir("spectrum");
  const auto o = invoke({"spectrum", "--r", "1", "--modes", "64", "--out", dir.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("spectrum"), std::string::npos);
  std::istringstream csv(slurp(dir / "spectrum.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "j,d_j");
  std::map<int, double> d;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    d[std::stoi(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
  }
  EXPECT_EQ(d.size(), 129u);
  EXPECT_EQ(d[1], 0.0);
  EXPECT_NEAR(d[2], -std::sqrt(3.0) / 2, 1e-15);
}

TEST(Cli, UsageErrorsExitTwoWithJson) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bogus"}, {}, {"spectrum", "--r", "-1"}, {"invariant", "--modes", "32", "--grid", "64"},
           {"spectrum", "--nope"}}) {
    const auto o = invoke(args);
    EXPECT_EQ(o.code, 2);
    const auto doc = json::parse(o.err);
    EXPECT_EQ(doc["error"], "UsageError");
    EXPECT_TRUE(doc.contains("operation"));
    EXPECT_TRUE(doc.contains("message"));
  }
}

TEST(Cli, NumericalFailureNamesTheOperation) {
  const fs::path dir = fresh_dir("topology");
  const auto o = invoke({"invariant", "--r", "2.5", "--modes", "8", "--grid", "64", "--out", dir.string()});
  EXPECT_EQ(o.code, 1);
  const auto doc = json::parse(o.err);
  EXPECT_EQ(doc["error"], "TopologyError");
  EXPECT_EQ(doc["operation"].get<std::string>().rfind("invariant::", 0), 0u);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path dir = fresh_dir("config");
  circinv::write_json_file(dir / "cfg.json", json{{"r", 0.5}, {"modes", 16}, {"out", (dir / "from_file").string()}});
  const auto o = invoke({"spectrum", "--config", (dir / "cfg.json").string(), "--modes", "8"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = circinv::read_json_file(dir / "from_file" / "spectrum.json");
  EXPECT_EQ(doc["r"], 0.5);
  EXPECT_EQ(doc["n_modes"], 8);

  circinv::write_json_file(dir / "bad.json", json{{"r", "one"}});
  EXPECT_EQ(invoke({"spectrum", "--config", (dir / "bad.json").string()}).code, 2);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const std::string cmd : {"invariant", "invariance-suite"}) {
    for (const auto& dir : {a, b}) {
      const auto o = invoke({cmd, "--seed", "11", "--modes", "16", "--grid", "128", "--out", dir.string()});
      ASSERT_EQ(o.code, 0) << o.err;
    }
  }
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    ++compared;
  }
  EXPECT_GE(compared, 3);
}

TEST(Cli, ExecutableReportsExitCodes) {
  const std::string tool = CIRCINV_TOOL;
  const fs::path dir = fresh_dir("exe");
  const int ok = std::system((tool + " spectrum --modes 4 --out " + dir.string() + " > /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(ok), 0);
  const int usage = std::system((tool + " nonsense 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(usage), 2);
}
