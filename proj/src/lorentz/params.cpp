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

#include "shk/lorentz/params.hpp"

#include "shk/common.hpp"

#include <cmath>
#include <numbers>

namespace shk::lorentz {

void LorentzParams::validate() const {
  if (!(plasma_parameter > 1.0) || !std::isfinite(plasma_parameter)) {
    throw DomainError("plasma parameter must exceed 1");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
  if (!(epsilon_o() < 1.0)) throw DomainError("tau must exceed one plasma period (epsilon_o < 1)");
  if (!(delta_reg > 0.0 && delta_reg < 1.0)) throw DomainError("delta_reg must lie in (0, 1)");
  if (!std::isfinite(charge_to_mass) || charge_to_mass == 0.0) {
    throw DomainError("charge-to-mass ratio must be finite and nonzero");
  }
  if (!(ion_charge >= 0.0) || !std::isfinite(ion_charge)) {
    throw DomainError("ion charge must be non-negative");
  }
  if (!(length_scale >= 0.0)) throw DomainError("length scale must be non-negative");
}

double LorentzParams::effective_ion_charge() const {
  return ion_charge > 0.0 ? ion_charge : 1.0 / (4.0 * std::numbers::pi * plasma_parameter);
}

double LorentzParams::coupling() const {
  const double q = effective_ion_charge();
  return charge_to_mass * charge_to_mass * ion_density() * q * q;
}

double LorentzParams::epsilon_1() const {
  if (!(length_scale > 0.0)) throw DomainError("length scale not set");
  return tau / length_scale;
}

LorentzParams LorentzParams::asymptotic(double plasma_parameter, double delta_reg) {
  LorentzParams p;
  p.plasma_parameter = plasma_parameter;
  p.tau = std::sqrt(plasma_parameter);
  p.length_scale = plasma_parameter;  // tau / L = 1/sqrt(Lambda)
  p.delta_reg = delta_reg;
  p.validate();
  return p;
}

}  // namespace shk::lorentz
