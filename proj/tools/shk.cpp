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

// shk: run experiments from a config file, or the built-in acceptance suite.
//
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 bad usage,
// config or I/O error, 3 numerical failure.

#include "shk/acceptance/criteria.hpp"
#include "shk/cli/emit.hpp"
#include "shk/cli/experiments.hpp"
#include "shk/common.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

constexpr int kOk = 0, kAssertion = 1, kUsage = 2, kNumerical = 3;

int run_command(const std::string& path, std::optional<std::uint64_t> seed,
                std::optional<int> workers, std::optional<std::string> out) {
  shk::cli::ExperimentConfig config = shk::cli::load_config(path);
  if (seed) config.seed = *seed;
  if (workers) config.workers = *workers;
  if (out) config.output = *out;
  const shk::cli::RunReport report = shk::cli::run(config);
  shk::cli::emit(report, config.output);
  for (const auto& [stage, seconds] : report.timings) {
    std::fprintf(stderr, "%s: %.3f s\n", stage.c_str(), seconds);
  }
  for (const auto& c : report.checks) {
    std::printf("%-4s %s: measured %.6g expected %.6g stderr %.3g\n", c.pass ? "ok" : "FAIL",
                c.name.c_str(), c.measured, c.expected, c.standard_error);
  }
  std::printf("%s -> %s\n", report.passed() ? "passed" : "FAILED", config.output.c_str());
  return report.passed() ? kOk : kAssertion;
}

int verify_command(const std::string& name, std::optional<std::uint64_t> seed,
                   std::optional<int> workers) {
  shk::acceptance::SuiteOptions options;
  if (seed) options.seed = *seed;
  if (workers) options.workers = *workers;
  bool all = true;
  for (int id : shk::acceptance::suite(name)) {
    const auto result = shk::acceptance::run_criterion(id, options);
    std::fputs(shk::acceptance::format_result(result).c_str(), stdout);
    std::fflush(stdout);
    all = all && result.passed();
  }
  return all ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Hamiltonian kinetics experiments"};
  app.require_subcommand(1);

  std::string config_path, suite_name;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file (sectioned key = value, or JSON)")
      ->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--workers", workers, "worker threads (default: config, then SHK_WORKERS)")
      ->check(CLI::Range(1, 1024));
  run->add_option("--out", out, "output directory (default: config)");

  auto* verify = app.add_subcommand("verify", "run built-in acceptance criteria");
  verify->add_option("suite", suite_name, "all, quick, or a criterion number 1..10")->required();
  verify->add_option("--seed", seed, "suite seed");
  verify->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return run_command(config_path, seed, workers, out);
    return verify_command(suite_name, seed, workers);
  } catch (const shk::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const shk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
