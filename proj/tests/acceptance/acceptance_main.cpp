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

// Acceptance suite: one pass/fail line per criterion, with the individual
// checks underneath. Arguments are suite names ("all", "quick" or a
// criterion number); no arguments runs everything.

#include "shk/acceptance/criteria.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<int> ids;
  try {
    if (argc == 1) ids = shk::acceptance::suite("all");
    for (int i = 1; i < argc; ++i) {
      for (int id : shk::acceptance::suite(argv[i])) ids.push_back(id);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
  shk::acceptance::SuiteOptions options;
  if (const char* w = std::getenv("SHK_WORKERS")) options.workers = std::max(1, std::atoi(w));
  int failed = 0;
  for (int id : ids) {
    const auto result = shk::acceptance::run_criterion(id, options);
    std::fputs(shk::acceptance::format_result(result).c_str(), stdout);
    std::fflush(stdout);
    if (!result.passed()) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}
