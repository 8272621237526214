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

#include <array>
#include <functional>
#include <vector>

namespace shk::lorentz {

// Dimensionless screened ion potential: 1/r on (1/Lambda, 1), a flat quintic
// core below 1/Lambda and a quintic taper to zero on (1, 1 + delta). The
// blends match value, slope and curvature of 1/r at the junctions, so the
// potential is C^2.
class RegularizedPotential {
 public:
  RegularizedPotential(double plasma_parameter, double delta_reg = 0.1);

  double value(double r) const;
  double derivative(double r) const;
  // derivative(r) / r, finite at r = 0.
  double derivative_over_r(double r) const;

  // psi(r) = r * value(r), its slope, and its running integral from 0.
  // The curvature is odd in r, matching the odd extension of psi.
  double radial_weight(double r) const;
  double radial_weight_slope(double r) const;
  double radial_weight_curvature(double r) const;
  double cumulative_weight(double r) const;

  double core_radius() const { return core_; }
  double support_radius() const { return 1.0 + delta_; }
  double plasma_parameter() const { return lambda_; }
  double delta_reg() const { return delta_; }
  // 0, core radius, 1, support radius.
  std::array<double, 4> breakpoints() const;

  // Core blend is lambda * poly(r / core); taper is poly((r - 1) / delta).
  const std::array<double, 6>& core_coefficients() const { return core_poly_; }
  const std::array<double, 6>& taper_coefficients() const { return taper_poly_; }

 private:
  double lambda_;
  double delta_;
  double core_;
  std::array<double, 6> core_poly_;
  std::array<double, 6> taper_poly_;
  std::array<double, 7> taper_weight_;  // (1 + delta s) * taper(s)
  double weight_at_core_ = 0.0;
  double weight_at_one_ = 0.0;
  double weight_total_ = 0.0;
};

double regularized_potential(double r, double plasma_parameter, double delta_reg = 0.1);

}  // namespace shk::lorentz
