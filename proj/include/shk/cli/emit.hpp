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

#include <string>

namespace shk::cli {

inline constexpr int kSchemaVersion = 1;

// RFC 4180 table, header row, numbers as %.17g.
std::string to_csv(const Series& series);
// report.json body: schema_version, kind, config, passed, checks, series.
std::string to_json(const RunReport& report);
// Polylines of the y columns against x with labelled axes.
std::string to_svg(const Series& series);

// Writes report.json plus <name>.csv and, for plotted series, <name>.svg
// into `directory` (created if missing). Throws IoError naming the path.
void emit(const RunReport& report, const std::string& directory);

}  // namespace shk::cli
