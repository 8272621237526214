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

#include "shk/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace shk::cli {

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

Check within_sigma(std::string name, double measured, double expected, double standard_error,
                   double sigmas) {
  const double band = sigmas * standard_error;
  return {std::move(name), measured, expected, standard_error, band,
          "|measured - expected| <= " + short_number(sigmas) + " stderr",
          std::abs(measured - expected) <= band};
}

Check within_relative(std::string name, double measured, double expected, double tolerance) {
  return {std::move(name), measured, expected, 0.0, tolerance,
          "|measured - expected| <= tolerance |expected|",
          std::abs(measured - expected) <= tolerance * std::abs(expected)};
}

Check below(std::string name, double measured, double limit) {
  return {std::move(name), measured, 0.0, 0.0, limit, "|measured| < tolerance",
          std::abs(measured) < limit};
}

Check positive_at(std::string name, double measured, double standard_error, double sigmas) {
  return {std::move(name), measured, 0.0, standard_error, sigmas,
          "measured > tolerance * stderr", measured > sigmas * standard_error};
}

Check holds(std::string name, bool value) {
  return {std::move(name), value ? 1.0 : 0.0, 1.0, 0.0, 0.0, "property holds", value};
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace shk::cli
