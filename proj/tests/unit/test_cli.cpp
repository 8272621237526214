/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "shk/cli/config.hpp"
#include "shk/cli/emit.hpp"
#include "shk/cli/experiments.hpp"

#include "doctest.h"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shk;
using namespace shk::cli;
namespace fs = std::filesystem;

namespace {

const Series& find_series(const RunReport& r, const std::string& name) {
  for (const auto& s : r.series) {
    if (s.name == name) return s;
  }
  FAIL("missing series " << name);
  throw std::logic_error("unreachable");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("shk-test-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(parse_config("[experiment]\nseed = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = pulse\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = pulse\n[nowhere]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = pulse\nparticles = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = pulse\ndt = 0.1x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = teleport\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = pulse\n[pulse]\nwindow = square\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = lorentz-scan\n[lorentz-scan]\n"
                               "lambdas = 1000, 100\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/shk.ini"), Error);
}

TEST_CASE("config reads sections and comments") {
  const auto c = parse_config(
      "; comment\n[experiment]\nkind = karney\nseed = 42\nparticles = 500\n"
      "[karney]\nnu = 2.2\naction = 3\n");
  CHECK(c.kind == ExperimentKind::karney);
  CHECK(c.seed == 42);
  CHECK(c.particles == 500);
  CHECK(c.karney.nu == 2.2);
  CHECK(c.karney_action == 3.0);
}

TEST_CASE("echo round-trips through the parser") {
  for (const char* kind :
       {"pulse", "karney", "lorentz-scan", "lorentz-micro", "two-particle", "witness"}) {
    const auto c = parse_config(std::string("[experiment]\nkind = ") + kind +
                                "\nseed = 9\ndt = 0.125\n");
    const std::string echo = config_echo(c);
    CHECK(nlohmann::json::parse(echo)["experiment"]["kind"] == kind);
    CHECK(config_echo(parse_config(echo)) == echo);
  }
  // Output location and worker count do not change results, so they stay
  // out of the echo.
  const auto a = parse_config("[experiment]\nkind = pulse\noutput = a\nworkers = 1\n");
  const auto b = parse_config("[experiment]\nkind = pulse\noutput = b\nworkers = 4\n");
  CHECK(config_echo(a) == config_echo(b));
}

TEST_CASE("csv quoting and line endings") {
  Series s{"t", {"a", "b,c"}, {{1.0, 0.1}, {2.0, -3.5e-20}}, "", {}, ""};
  const std::string csv = to_csv(s);
  CHECK(csv == "a,\"b,c\"\r\n1,0.10000000000000001\r\n2,-3.5e-20\r\n");
}

TEST_CASE("two-particle run writes the documented table") {
  auto c = parse_config(
      "[experiment]\nkind = two-particle\nparticles = 200\nduration = 1\nrecords = 6\n"
      "check = false\n");
  c.workers = 1;
  const auto report = run(c);
  CHECK(report.checks.empty());
  const auto& s = find_series(report, "two_particle");
  CHECK(s.columns == std::vector<std::string>{"t", "var_sep_v_physical", "var_sep_v_counter",
                                              "stderr_physical", "stderr_counter"});
  CHECK(s.rows.size() == 6);
  const auto dir = scratch("two");
  emit(report, dir.string());
  const std::string csv = slurp(dir / "two_particle.csv");
  CHECK(csv.rfind("t,var_sep_v_physical,", 0) == 0);
  CHECK(csv.find("\r\n") != std::string::npos);
  boost::property_tree::ptree svg;
  std::istringstream in(slurp(dir / "two_particle.svg"));
  CHECK_NOTHROW(boost::property_tree::read_xml(in, svg));
  CHECK(svg.count("svg") == 1);
  const auto json = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(json["schema_version"] == kSchemaVersion);
  CHECK(json["kind"] == "two-particle");
  CHECK(json["config"] == nlohmann::json::parse(report.config_json));
  fs::remove_all(dir);
}

TEST_CASE("pulse without a field stays at rest") {
  auto c = parse_config(
      "[experiment]\nkind = pulse\nparticles = 50\nduration = 2\nrecords = 3\ncheck = false\n"
      "[pulse]\nphi0 = 0\n");
  c.workers = 1;
  const auto report = run(c);
  const auto& s = find_series(report, "pulse_variance");
  for (const auto& row : s.rows) {
    for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] == 0.0);
  }
}

TEST_CASE("scan table converges") {
  auto c = parse_config("[experiment]\nkind = lorentz-scan\n");
  const auto report = run(c);
  CHECK(report.passed());
  const auto& s = find_series(report, "lorentz_scan");
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0][0] == 100.0);
  CHECK(s.rows[2][2] < s.rows[1][2]);
  CHECK(s.rows[1][2] < s.rows[0][2]);
}

TEST_CASE("emit reports unwritable locations") {
  RunReport r;
  r.kind = "pulse";
  r.config_json = "{}";
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(emit(r, (file / "sub").string()), IoError);
  fs::remove_all(file);
}
