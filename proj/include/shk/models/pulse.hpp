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

#include "shk/coarse/covariance_kernel.hpp"
#include "shk/coarse/langevin_model.hpp"
#include "shk/coarse/time_field.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace shk::models {

enum class PulseWindow { impulse, uniform, custom };

// Spatially uniform electric pulses: potential phi0 * (n . x) * u(t) with a
// random unit vector n per interval. The window u has unit integral.
struct PulseParams {
  double phi0 = 1.0;
  double charge_to_mass = 1.0;
  double tau = 1.0;
  PulseWindow window = PulseWindow::impulse;
  std::function<double(double)> custom_window;  // used when window == custom

  void validate() const;
  // Net velocity kick per unit direction.
  double m0() const;
  // Position shift per unit direction at the end of an interval.
  double m1() const;
};

// dx = v dt + m1/sqrt(3 tau) o dW, dv = m0/sqrt(3 tau) o dW.
LangevinModel pulse_model(const PulseParams& p);

// Noise hamiltonians e_i . (m1 v - m0 x) / sqrt(3 tau), for comparison with
// a KL-derived basis.
std::vector<ScalarField> pulse_noise_hamiltonians(const PulseParams& p);

// Random pulse perturbation for the coarse-graining pipeline.
coarse::PerturbationEnsemble pulse_ensemble(const PulseParams& p);

// Closed-form covariance kernel of the pulse ensemble (constant in z).
coarse::CovarianceKernel pulse_kernel(const PulseParams& p);

enum class DirectionSharing { shared, independent };

// Exact interval map of the pulse dynamics, applied `intervals` times.
// Returns states at every interval boundary, record-major like the SDE
// trajectories.
struct MicroTrajectories {
  std::size_t particles = 0;
  std::vector<double> times;
  std::vector<PhasePoint> states;
  const PhasePoint& at(std::size_t record, std::size_t particle) const {
    return states[record * particles + particle];
  }
};

MicroTrajectories pulse_micro_simulate(const PulseParams& p, const std::vector<PhasePoint>& initial,
                                       std::size_t intervals, std::uint64_t seed,
                                       DirectionSharing sharing = DirectionSharing::independent,
                                       std::size_t record_every = 1);

// Six-mode SDE with the pulse model's one-particle statistics but noise
// directions rotated by cos/sin of an arbitrary phase field. Not Hamiltonian.
LangevinModel counterexample_model(const PulseParams& p, const ScalarField& phase);

}  // namespace shk::models
