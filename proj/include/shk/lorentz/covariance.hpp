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

#include "shk/lorentz/potential.hpp"

#include <functional>
#include <vector>

namespace shk::lorentz {

// Overlap C(d) = integral of g(|r|) g(|r - d e|) over R^3 for the regularized
// potential, with its first two derivatives. Evaluated exactly: the
// bipolar reduction leaves integrals of piecewise polynomials, which
// Gauss-Legendre integrates without error once the pieces are split at every
// breakpoint. Large separations use the one-dimensional form
// 2 pi F(d) / d; small ones use the division-free form
// 2 pi int psi(r) int_{-1}^{1} psi(r + d s) ds dr, whose d-derivatives stay
// well conditioned as d -> 0.
class IsotropicCovariance {
 public:
  explicit IsotropicCovariance(RegularizedPotential potential);
  IsotropicCovariance(double plasma_parameter, double delta_reg = 0.1)
      : IsotropicCovariance(RegularizedPotential(plasma_parameter, delta_reg)) {}

  double value(double d) const;
  double slope(double d) const;
  double curvature(double d) const;

  double at_origin() const { return c0_; }
  double curvature_at_origin() const { return c2_origin_; }
  // Twice the potential's support radius.
  double support_radius() const { return 2.0 * potential_.support_radius(); }
  // Separations where C loses smoothness.
  const std::vector<double>& breakpoints() const { return kinks_; }
  const RegularizedPotential& potential() const { return potential_; }

 private:
  // F(d) = integral of psi(r) [G(d + r) - G(|d - r|)] dr and derivatives.
  void moments(double d, double& f, double& f1, double& f2, int order) const;
  // The order-th derivative of C by the division-free form.
  double near_field(double d, int order) const;

  RegularizedPotential potential_;
  double c0_ = 0.0;
  double c2_origin_ = 0.0;
  double near_ = 0.0;  // below this separation use near_field
  std::vector<double> kinks_;
};

double potential_covariance(double d, double plasma_parameter, double delta_reg = 0.1);

// Second route: the overlap integral of an arbitrary radial profile done
// numerically in spherical coordinates about one centre (radius, then polar
// cosine). `breakpoints` lists radii where the profile is not smooth.
double overlap_integral(const std::function<double(double)>& profile, double d,
                        double radius, const std::vector<double>& breakpoints,
                        double rel_tol = 1e-10);

}  // namespace shk::lorentz
