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

namespace shk::lorentz {

// Electrons scattering off static screened ions, in units where the Debye
// length, plasma frequency and thermal speed are all 1.
struct LorentzParams {
  double plasma_parameter = 20.0;  // Lambda
  double tau = 10.0;               // coarse-graining interval
  double charge_to_mass = -1.0;
  // Ion charge in potential units; 0 selects 1/(4 pi Lambda), the value for
  // which the diffusion tensor approaches the classical Lorentz tensor.
  double ion_charge = 0.0;
  double delta_reg = 0.1;
  // Distribution length scale; 0 means "not set" (epsilon_1 undefined).
  double length_scale = 0.0;

  void validate() const;

  double ion_density() const { return plasma_parameter; }
  double effective_ion_charge() const;
  // (q/m)^2 n_i q_i^2: multiplies the dimensionless potential covariance.
  double coupling() const;
  double epsilon_o() const { return 1.0 / tau; }
  double epsilon_1() const;
  double support_radius() const { return 1.0 + delta_reg; }

  // epsilon_o = epsilon_1 = 1/sqrt(Lambda).
  static LorentzParams asymptotic(double plasma_parameter, double delta_reg = 0.1);
};

}  // namespace shk::lorentz
