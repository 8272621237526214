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

#include "shk/coarse/langevin_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace shk::langevin {

enum class Scheme { heun, implicit_midpoint };

// shared: every particle sees the same Wiener path.
// independent: one path per particle.
// paired: particles 2j and 2j+1 share path j (two-particle statistics).
enum class NoiseMode { shared, independent, paired };

// One Stratonovich step. dW holds one increment per noise field.
PhasePoint stratonovich_step(const LangevinModel& model, const PhasePoint& z, double dt,
                             std::span<const double> dW, Scheme scheme = Scheme::heun);

struct FlowOptions {
  double duration = 1.0;
  double dt = 0.01;
  std::uint64_t seed = 1;
  NoiseMode mode = NoiseMode::independent;
  Scheme scheme = Scheme::heun;
  int record_every = 1;
  int workers = 1;
  std::uint64_t stream_offset = 0;
};

struct EnsembleTrajectories {
  int dim = 0;
  std::size_t particles = 0;
  double dt = 0.0;
  NoiseMode mode = NoiseMode::independent;
  std::vector<double> times;
  std::vector<PhasePoint> states;  // record-major: states[record * particles + p]

  const PhasePoint& at(std::size_t record, std::size_t particle) const {
    return states[record * particles + particle];
  }
  std::size_t records() const { return times.size(); }
};

EnsembleTrajectories simulate_flow(const LangevinModel& model,
                                   std::span<const PhasePoint> initial,
                                   const FlowOptions& options);

}  // namespace shk::langevin
