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

#include <map>
#include <string>
#include <vector>

namespace shk::cli {

// One compared quantity. `rule` says how measured and expected were compared.
struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double standard_error = 0.0;
  double tolerance = 0.0;
  std::string rule;
  bool pass = false;
};

// |measured - expected| <= sigmas * standard_error.
Check within_sigma(std::string name, double measured, double expected, double standard_error,
                   double sigmas = 3.0);
// |measured - expected| <= tolerance * |expected|.
Check within_relative(std::string name, double measured, double expected, double tolerance);
// |measured| < limit.
Check below(std::string name, double measured, double limit);
// measured - sigmas * standard_error > 0.
Check positive_at(std::string name, double measured, double standard_error, double sigmas = 3.0);
// A yes/no property; measured is 1 or 0.
Check holds(std::string name, bool value);

// Numeric table written as CSV, optionally plotted as y columns against x.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string x;                  // empty: no plot
  std::vector<std::string> y;
  std::string title;
};

struct RunReport {
  std::string kind;
  std::string config_json;  // echo of the effective configuration
  std::vector<Check> checks;
  std::vector<Series> series;
  // Wall-clock seconds per stage. Never written to the output files.
  std::vector<std::pair<std::string, double>> timings;

  bool passed() const;
};

}  // namespace shk::cli
