#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/output.hpp"

using namespace stark;
using namespace stark::cli;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_args(std::vector<std::string> args) {
  std::vector<char*> argv;
  static std::string name = "stark";
  argv.push_back(name.data());
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("stark_test_" + name);
}
}  // namespace

TEST_CASE("17 significant digits round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 6.283185307179586, 1e-300, -2.5e17}) {
    CHECK(std::stod(num(x)) == x);
  }
  CHECK(num(0.1) == "0.10000000000000001");
}

TEST_CASE("parallel_map keeps index order and propagates errors") {
  const auto v = parallel_map(100, 4, [](int i) { return i * i; });
  for (int i = 0; i < 100; ++i) CHECK(v[i] == i * i);
  CHECK_THROWS_AS(parallel_map(50, 4,
                               [](int i) {
                                 if (i == 17) throw std::runtime_error("boom");
                                 return i;
                               }),
                  std::runtime_error);
}

TEST_CASE("defaults load and validate") {
  const RunConfig c = load_config("", {});
  CHECK(c.a == doctest::Approx(1.0 / (2.0 * kPi)));
  CHECK(c.mu == 0.3);
  CHECK(c.beta == 0.1);
  CHECK(c.m_min == -3);
  CHECK(c.m_max == 3);
  CHECK(c.beta_sweep.size() == 3);
  CHECK(c.branches.size() == 2);
  CHECK(c.entries.size() == default_entries().size());
}

TEST_CASE("invalid configuration is rejected") {
  CHECK_THROWS_AS(load_config("", {"tolerances.jump=0"}), ValidationError);
  CHECK_THROWS_AS(load_config("", {"spectrum.points=0"}), ValidationError);
  CHECK_THROWS_AS(load_config("", {"scan.im_min=1", "scan.im_max=0"}), ValidationError);
  CHECK_THROWS_AS(load_config("", {"nope.key=1"}), ValidationError);
  CHECK_THROWS_AS(load_config("", {"impurity.beta=abc"}), ValidationError);
  CHECK_THROWS_AS(load_config("", {"impurity.beta"}), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini", {}), ValidationError);
}

TEST_CASE("INI file and overrides") {
  const auto path = temp("config.ini");
  {
    std::ofstream os(path);
    os << "[impurity]\nmu = 0.25\nbeta = 0.05\n\n[resonances]\nm_min = -1\nm_max = 1\n";
  }
  const RunConfig c = load_config(path.string(), {"impurity.beta=0.07"});
  CHECK(c.mu == 0.25);
  CHECK(c.beta == 0.07);
  CHECK(c.m_min == -1);
  CHECK(c.entries.at("impurity.beta") == "0.07");
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  const auto out = temp("out.csv");
  CHECK(run_args({"spectrum", "--set", "spectrum.points=0", "--out", out.string()}) == kExitValidation);
  CHECK(run_args({"resonances", "--set", "impurity.mu=0.5", "--out", out.string()}) ==
        kExitValidation);
  CHECK(run_args({"nonsense", "--out", out.string()}) == kExitValidation);
  CHECK(run_args({"spectrum"}) == kExitValidation);
  CHECK(run_args({"verify", "--set", "tolerances.oracle=0", "--out", out.string()}) ==
        kExitValidation);
  CHECK(run_args({"resonances", "--set", "numerics.newton_max_iterations=1", "--set",
                  "resonances.beta_sweep=", "--out", out.string()}) == kExitNumerical);
  std::filesystem::remove(out);
}

TEST_CASE("spectrum output") {
  const auto out = temp("spectrum.csv");
  REQUIRE(run_args({"spectrum", "--set", "spectrum.points=101", "--out", out.string()}) == kExitOk);
  const std::string csv = slurp(out);
  CHECK(csv.find("# schema_version=1\n") != std::string::npos);
  CHECK(csv.find("lambda,eta,band_index\n") != std::string::npos);
  std::istringstream is(csv);
  std::string line;
  double prev = -1.0;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'l') continue;
    const double eta = std::stod(line.substr(line.find(',') + 1));
    CHECK(eta >= prev);
    prev = eta;
    ++rows;
  }
  CHECK(rows == 101);
  CHECK(std::filesystem::exists(out.string() + ".ladder.csv"));
  std::filesystem::remove(out);
  std::filesystem::remove(out.string() + ".ladder.csv");
}

TEST_CASE("krein-scan at beta = 0 is identically one") {
  const auto out = temp("scan.csv");
  REQUIRE(run_args({"krein-scan", "--set", "impurity.beta=0", "--set", "scan.re_points=5",
                    "--set", "scan.im_points=4", "--out", out.string()}) == kExitOk);
  std::istringstream is(slurp(out));
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("branch", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 5);
    CHECK(std::stod(f[3]) == doctest::Approx(1.0).epsilon(1e-15));
    ++rows;
  }
  CHECK(rows == 40);
  std::filesystem::remove(out);
}

TEST_CASE("resonances JSON is complete and deterministic") {
  const auto a = temp("res_a.json");
  const auto b = temp("res_b.json");
  REQUIRE(run_args({"resonances", "--out", a.string()}) == kExitOk);
  REQUIRE(run_args({"resonances", "--set", "numerics.workers=1", "--out", b.string()}) == kExitOk);
  const auto ja = nlohmann::json::parse(slurp(a));
  const auto jb = nlohmann::json::parse(slurp(b));
  CHECK(ja["schema_version"] == 1);
  CHECK(ja["resonances"].size() == 7);
  CHECK(ja["failures"].empty());
  CHECK(ja["resonances"] == jb["resonances"]);
  CHECK(ja["beta_sweep"] == jb["beta_sweep"]);
  for (const auto& r : ja["resonances"]) CHECK(r["location"]["im"].get<double>() < 0.0);
  for (const auto& row : ja["beta_sweep"]["strips"]) {
    for (double r : row["ratio_first_order"]) CHECK(r == doctest::Approx(16.0).epsilon(0.25));
  }
  REQUIRE(run_args({"resonances", "--out", b.string()}) == kExitOk);
  CHECK(slurp(a) == slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("verify flags a wrong theta sign") {
  const auto out = temp("verify.txt");
  CHECK(run_args({"verify", "--set", "model.theta_sign=negative", "--out", out.string()}) ==
        kExitInconsistent);
  CHECK(slurp(out).find("FAIL eigen.residual") != std::string::npos);
  std::filesystem::remove(out);
}
