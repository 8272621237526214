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

#include "shk/lorentz/params.hpp"
#include "shk/models/karney.hpp"
#include "shk/models/pulse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shk::cli {

enum class ExperimentKind { pulse, karney, lorentz_scan, lorentz_micro, two_particle, witness };

std::string kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::pulse;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: not given, fall back to SHK_WORKERS
  std::string output = "shk-out";
  std::size_t particles = 10000;
  double duration = 0.0;  // 0: kind default
  double dt = 0.0;        // 0: kind default
  int records = 21;
  bool check = true;      // evaluate the kind's assertions
  double sigmas = 3.0;    // acceptance band for statistical checks

  // [pulse], also used by two-particle
  models::PulseParams pulse;
  std::size_t micro_intervals = 0;  // 0: skip the exact-map comparison

  // [karney]
  models::KarneyParams karney;
  double karney_action = 2.0;

  // [lorentz-scan]
  std::vector<double> scan_lambdas{100.0, 1000.0, 10000.0};
  double scan_speed = 1.0;
  double scan_delta_reg = 0.1;
  double scan_ratio_limit = 0.05;

  // [lorentz-micro]
  lorentz::LorentzParams micro;
  double micro_speed = 2.0;
  std::size_t micro_jumps = 10000;
  double micro_box = 0.0;
  double micro_dt = 0.0;
  bool micro_lazy = true;

  // [two-particle]
  double separation = 1.5707963267948966;  // initial x1 offset within a pair

  // [witness]
  lorentz::LorentzParams witness;
  std::size_t witness_samples = 20;
  double witness_tolerance = 1e-4;
};

// Sectioned key = value text (';' and '#' comments) or the JSON echo
// produced by config_echo. Unknown sections or keys, malformed values and
// out-of-range numbers raise ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Effective configuration as JSON, sections in a fixed order, only the
// sections the kind reads.
std::string config_echo(const ExperimentConfig& config);

}  // namespace shk::cli
