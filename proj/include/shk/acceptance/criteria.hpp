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

#pragma once

#include "shk/cli/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shk::acceptance {

struct SuiteOptions {
  int workers = 1;
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<cli::Check> checks;
  double seconds = 0.0;
  std::string error;  // set when the criterion threw instead of finishing

  bool passed() const;
};

inline constexpr int kCriteria = 10;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& options = {});

// "all", "quick" (everything except the long micro-simulation and
// statistical runs) or a single criterion number.
std::vector<int> suite(const std::string& name);

// "[PASS] 3 title (1.2 s)" followed by one indented line per check.
std::string format_result(const CriterionResult& result);

}  // namespace shk::acceptance
