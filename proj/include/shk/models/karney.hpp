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

namespace shk::models {

// Magnetized ions in a lower-hybrid wave, in action-angle coordinates
// x = theta, v = I, coarse-grained over one gyro-period (tau = 2 pi).
struct KarneyParams {
  double epsilon = 0.1;
  double nu = 2.2;  // wave frequency in units of the gyro-frequency
  int series_cutoff = 60;
  double action_min = 0.1;
  double action_max = 50.0;

  int harmonic() const;     // nearest integer to nu
  double detuning() const;  // nu - harmonic
  void validate() const;
};

inline constexpr double kKarneyTau = 6.283185307179586;

// sin(x) / x with the removable singularity filled in.
double sinc(double x);

// Mean second-order kick E[s2] as a function of the action, and its slope.
double karney_mean_s2(const KarneyParams& p, double action);
double karney_mean_s2_slope(const KarneyParams& p, double action);

// Two noise modes eps sqrt(pi) sinc(pi delta) J_n(sqrt(2I)) {cos, sin}(n theta)
// and drift dtheta/dt = 1 + (eps^2 / 2 pi) dE[s2]/dI.
LangevinModel karney_model(const KarneyParams& p);

// <dI^2> / (2 dt) implied by the model at a given action.
double karney_action_diffusion(const KarneyParams& p, double action);

// Closed-form kernel of the random-phase first-order kick function.
coarse::CovarianceKernel karney_kernel(const KarneyParams& p);

}  // namespace shk::models
