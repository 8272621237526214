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

#include "shk/micro/dynamics.hpp"

#include <cstdint>
#include <string>

namespace shk::micro {

struct JumpMomentOptions {
  std::size_t intervals = 10000;
  std::uint64_t seed = 1;
  double box = 0.0;  // 0: max(4 b, |v| tau + 2 b), b the support radius
  double dt = 0.0;   // 0: default_time_step
  // true: a fresh ion field every interval. false: one field, and the
  // electron keeps its state from interval to interval.
  bool resample = true;
  // Poisson ions drawn cell by cell along the path instead of a fixed
  // count over the whole box; same statistics near the electron.
  bool lazy_field = true;
  int workers = 1;
  std::size_t jackknife_blocks = 100;
  double energy_tolerance = 1e-4;
};

struct JumpMoments {
  Vec6 drift = Vec6::Zero();  // <dz>/tau, free streaming removed
  Mat6 diffusion = Mat6::Zero();  // <dz dz^T>/(2 tau)
  Vec6 drift_stderr = Vec6::Zero();
  Mat6 diffusion_stderr = Mat6::Zero();
  double kinetic_increment = 0.0;  // mean change of |v|^2/2 per interval
  double kinetic_increment_stderr = 0.0;
  double max_energy_drift = 0.0;
  std::size_t intervals = 0;
  double ions = 0.0;  // mean ions materialized per field
  double box = 0.0;
  double dt = 0.0;
};

double default_box(const lorentz::LorentzParams& params, double speed);

// Empirical jump moments over `intervals` coarse-graining intervals of
// length tau starting from velocity v0, with blocked-jackknife errors.
JumpMoments empirical_jump_moments(const lorentz::LorentzParams& params, const Vec3& v0,
                                   const JumpMomentOptions& options);

// One row per moment component: kind, i, j, value, stderr.
std::string jump_moments_csv(const JumpMoments& m);

}  // namespace shk::micro
