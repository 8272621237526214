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

#include "shk/common.hpp"
#include "shk/lorentz/covariance.hpp"
#include "shk/lorentz/params.hpp"

#include <string>
#include <vector>

namespace shk::lorentz {

// Dimensionless electric-field covariance at separation delta:
// -(C'/|d|)(I - e e) - C'' e e, and -C''(0) I at the origin.
Mat3 field_covariance(const Vec3& delta, const IsotropicCovariance& cov);

// Integral of |l|^n field_covariance(l e) over the real line, closed form
// -2 (integral_0^inf l^(n-1) C'(l) dl) (I - (n+1) e e).
Mat3 closed_form_In(int n, const Vec3& e, const IsotropicCovariance& cov);
// The same integral by direct entrywise quadrature over [-L, L].
Mat3 direct_In(int n, const Vec3& e, const IsotropicCovariance& cov, double half_width);

// Mean second-order kick, a function of the velocity only.
double mean_s2_lorentz(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);

// Drift correction X_<s2> / tau (position components only).
Vec3 drift_correction_hl(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);

// Phase-space diffusion tensor <X_s1 (x) X_s1> / (2 tau), ordered (x, v).
Mat6 diffusion_tensor_hl(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);

// Classical Lorentz collision frequency and diffusion tensor.
double collision_frequency(const Vec3& v, const LorentzParams& p);
Mat6 lorentz_tensor(const Vec3& v, const LorentzParams& p);

// div(D_HL . dH0) by central differences of D_HL in velocity.
double energy_rate_numeric(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);
// (q/m)^2 / (|v|^2 tau) d/d|v| (|v| [C(0) - C(|v| tau)]).
double energy_rate_exact(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);
// Large |v| tau limit: (q/m)^2 C(0) / (|v|^2 tau).
double energy_rate_asymptotic(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);

// Ito drift of the coarse-grained process minus free streaming: the
// X_<s2>/tau correction plus the velocity divergence of D_HL. This is what
// an empirical <dz>/tau with streaming removed estimates.
Vec6 ito_drift_correction_hl(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov);

struct ScanRow {
  double plasma_parameter;
  double rel_dev_vv;
  double par_perp_ratio;
  double chi_drift;
  double energy_rate_numeric;
  double energy_rate_analytic;
};

// D_HL against D_L along epsilon_o = epsilon_1 = 1/sqrt(Lambda).
std::vector<ScanRow> asymptotic_scan(const std::vector<double>& plasma_parameters, double speed,
                                     double delta_reg = 0.1);

std::string scan_csv(const std::vector<ScanRow>& rows);

struct WitnessResult {
  double numeric;
  double analytic;
  double collision_frequency;
};

// (L_{X_H0} alpha_L)(Y, Y) with Y = (w, w), alpha_L the covariant form of
// D_L: numeric Lie derivative against 2 nu w.U.w.
WitnessResult non_hamiltonian_witness(const Vec3& v, const Vec3& w, const LorentzParams& p);

}  // namespace shk::lorentz
