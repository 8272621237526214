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

#include "shk/micro/ion_field.hpp"
#include "shk/phase/phase_point.hpp"

#include <vector>

namespace shk::micro {

struct MicroTrajectory {
  std::vector<PhasePoint> states;  // every record_every steps, first and last included
  std::vector<double> energy;
  std::vector<double> times;
  double dt = 0.0;
  double max_energy_drift = 0.0;  // max |E - E0| / max(|E0|, |v0|^2 / 2)
};

// dt small enough to resolve the potential core at speed |v|.
double default_time_step(const lorentz::LorentzParams& params, double speed);

struct VerletOptions {
  double dt = 0.0;  // 0: default_time_step
  std::size_t record_every = 1;
  double energy_tolerance = 1e-4;
};

// Velocity Verlet for 1/2 |v|^2 + (q/m) phi(x). Positions are not wrapped
// into the box. Throws NumericalError when the relative energy drift exceeds
// the tolerance.
MicroTrajectory verlet_trajectory(const IonField& field, const PhasePoint& start, double duration,
                                  const VerletOptions& options = {});

// Same integrator without recording; returns the end state.
PhasePoint verlet_advance(const IonField& field, const PhasePoint& start, double duration,
                          const VerletOptions& options, double* max_energy_drift = nullptr);

}  // namespace shk::micro
