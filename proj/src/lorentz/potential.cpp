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

#include "shk/lorentz/potential.hpp"

#include "shk/common.hpp"

#include <cmath>

namespace shk::lorentz {

namespace {

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double y = 0.0;
  for (std::size_t k = N; k-- > 0;) y = y * x + c[k];
  return y;
}

template <std::size_t N>
double horner_slope(const std::array<double, N>& c, double x) {
  double y = 0.0;
  for (std::size_t k = N; k-- > 1;) y = y * x + static_cast<double>(k) * c[k];
  return y;
}

template <std::size_t N>
double horner_curvature(const std::array<double, N>& c, double x) {
  double y = 0.0;
  for (std::size_t k = N; k-- > 2;) y = y * x + static_cast<double>(k * (k - 1)) * c[k];
  return y;
}

template <std::size_t N>
double horner_integral(const std::array<double, N>& c, double x) {
  double y = 0.0;
  for (std::size_t k = N; k-- > 0;) y = y * x + c[k] / static_cast<double>(k + 1);
  return y * x;
}

// r * core(r) in units of the core variable s = r / core: 1.5 s - 1.5 s^5 + s^6.
constexpr std::array<double, 7> kCoreWeight{0.0, 1.5, 0.0, 0.0, 0.0, -1.5, 1.0};

}  // namespace

RegularizedPotential::RegularizedPotential(double plasma_parameter, double delta_reg)
    : lambda_(plasma_parameter), delta_(delta_reg) {
  if (!(plasma_parameter > 1.0) || !std::isfinite(plasma_parameter)) {
    throw DomainError("plasma parameter must exceed 1");
  }
  if (!(delta_reg > 0.0 && delta_reg < 1.0)) throw DomainError("delta_reg must lie in (0, 1)");
  core_ = 1.0 / lambda_;
  // Flat to third order at 0; value, slope, curvature of 1/r at the core edge.
  core_poly_ = {1.5, 0.0, 0.0, 0.0, -1.5, 1.0};
  // Quintic Hermite: (1, -1, 2) at r = 1, (0, 0, 0) at r = 1 + delta.
  const double d = delta_;
  taper_poly_ = {1.0, -d, d * d, -10.0 + 6.0 * d - 3.0 * d * d, 15.0 - 8.0 * d + 3.0 * d * d,
                 -6.0 + 3.0 * d - d * d};
  taper_weight_.fill(0.0);
  for (int k = 0; k < 6; ++k) {
    taper_weight_[k] += taper_poly_[k];
    taper_weight_[k + 1] += d * taper_poly_[k];
  }
  weight_at_core_ = core_ * horner_integral(kCoreWeight, 1.0);
  weight_at_one_ = weight_at_core_ + (1.0 - core_);
  weight_total_ = weight_at_one_ + d * horner_integral(taper_weight_, 1.0);
}

std::array<double, 4> RegularizedPotential::breakpoints() const {
  return {0.0, core_, 1.0, 1.0 + delta_};
}

double RegularizedPotential::value(double r) const {
  r = std::abs(r);
  if (r < core_) return lambda_ * horner(core_poly_, r / core_);
  if (r <= 1.0) return 1.0 / r;
  if (r < 1.0 + delta_) return horner(taper_poly_, (r - 1.0) / delta_);
  return 0.0;
}

double RegularizedPotential::derivative(double r) const {
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::abs(r);
  double g = 0.0;
  if (r < core_) {
    g = lambda_ * lambda_ * horner_slope(core_poly_, r / core_);
  } else if (r <= 1.0) {
    g = -1.0 / (r * r);
  } else if (r < 1.0 + delta_) {
    g = horner_slope(taper_poly_, (r - 1.0) / delta_) / delta_;
  }
  return sign * g;
}

double RegularizedPotential::derivative_over_r(double r) const {
  r = std::abs(r);
  if (r < core_) {
    // lambda^3 (-6 s^2 + 5 s^3).
    const double s = r / core_;
    return lambda_ * lambda_ * lambda_ * s * s * (-6.0 + 5.0 * s);
  }
  return derivative(r) / r;
}

double RegularizedPotential::radial_weight(double r) const {
  r = std::abs(r);
  if (r < core_) return horner(kCoreWeight, r / core_);
  if (r <= 1.0) return 1.0;
  if (r < 1.0 + delta_) return horner(taper_weight_, (r - 1.0) / delta_);
  return 0.0;
}

double RegularizedPotential::radial_weight_slope(double r) const {
  r = std::abs(r);
  if (r < core_) return horner_slope(kCoreWeight, r / core_) / core_;
  if (r <= 1.0) return 0.0;
  if (r < 1.0 + delta_) return horner_slope(taper_weight_, (r - 1.0) / delta_) / delta_;
  return 0.0;
}

double RegularizedPotential::radial_weight_curvature(double r) const {
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::abs(r);
  double c = 0.0;
  if (r < core_) {
    c = horner_curvature(kCoreWeight, r / core_) / (core_ * core_);
  } else if (r > 1.0 && r < 1.0 + delta_) {
    c = horner_curvature(taper_weight_, (r - 1.0) / delta_) / (delta_ * delta_);
  }
  return sign * c;
}

double RegularizedPotential::cumulative_weight(double r) const {
  if (r <= 0.0) return 0.0;
  if (r < core_) return core_ * horner_integral(kCoreWeight, r / core_);
  if (r <= 1.0) return weight_at_core_ + (r - core_);
  if (r < 1.0 + delta_) {
    return weight_at_one_ + delta_ * horner_integral(taper_weight_, (r - 1.0) / delta_);
  }
  return weight_total_;
}

double regularized_potential(double r, double plasma_parameter, double delta_reg) {
  if (r < 0.0) throw DomainError("radius must be non-negative");
  return RegularizedPotential(plasma_parameter, delta_reg).value(r);
}

}  // namespace shk::lorentz
