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

#include "shk/langevin/integrate.hpp"

#include <cmath>
#include <string>

namespace shk::langevin {

namespace {

StateVector increment(const LangevinModel& model, const PhasePoint& z, double dt,
                      std::span<const double> dW) {
  StateVector d = dt * model.drift(z);
  for (std::size_t k = 0; k < model.noise.size(); ++k) {
    if (dW[k] != 0.0) d += dW[k] * model.noise[k](z);
  }
  return d;
}

}  // namespace

PhasePoint stratonovich_step(const LangevinModel& model, const PhasePoint& z, double dt,
                             std::span<const double> dW, Scheme scheme) {
  if (z.dim() != model.dim) throw DimensionError("point and model differ in dimension");
  if (dW.size() != model.noise.size()) {
    throw DimensionError("expected " + std::to_string(model.noise.size()) +
                         " Wiener increments, got " + std::to_string(dW.size()));
  }
  if (model.domain_check) model.domain_check(z);
  const StateVector& s = z.state();
  const StateVector d0 = increment(model, z, dt, dW);
  const PhasePoint predictor = PhasePoint::from_state(s + d0);
  if (model.domain_check) model.domain_check(predictor);
  PhasePoint next;
  if (scheme == Scheme::heun) {
    next = PhasePoint::from_state(s + 0.5 * (d0 + increment(model, predictor, dt, dW)));
  } else {
    StateVector guess = predictor.state();
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const PhasePoint mid = PhasePoint::from_state(0.5 * (s + guess));
      if (model.domain_check) model.domain_check(mid);
      const StateVector updated = s + increment(model, mid, dt, dW);
      const double change = (updated - guess).norm();
      guess = updated;
      if (change <= 1e-12 * (1.0 + guess.norm())) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("implicit midpoint iteration did not converge");
    next = PhasePoint::from_state(guess);
  }
  if (model.domain_check) model.domain_check(next);
  return next;
}

}  // namespace shk::langevin
