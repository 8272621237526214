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

#include "shk/models/karney.hpp"

#include "shk/models/bessel.hpp"
#include "shk/phase/poisson.hpp"

#include <cmath>
#include <numbers>

namespace shk::models {

namespace {

constexpr double kPi = std::numbers::pi;

double wave_argument(double action) { return std::sqrt(2.0 * action); }

// (sinc(2 pi d) - 1) / d, finite at d = 0.
double detuning_factor(double d) {
  const double y = 2.0 * kPi * d;
  if (std::abs(y) < 1e-3) {
    const double y2 = y * y;
    return -2.0 * kPi * y * (1.0 / 6.0 - y2 / 120.0 + y2 * y2 / 5040.0);
  }
  return (std::sin(y) / y - 1.0) / d;
}

void check_action(const KarneyParams& p, double action) {
  if (!(action >= p.action_min && action <= p.action_max)) {
    throw DomainError("action " + std::to_string(action) + " outside [" +
                      std::to_string(p.action_min) + ", " + std::to_string(p.action_max) + "]");
  }
}

}  // namespace

int KarneyParams::harmonic() const { return static_cast<int>(std::lround(nu)); }
double KarneyParams::detuning() const { return nu - harmonic(); }

void KarneyParams::validate() const {
  if (!std::isfinite(nu) || !std::isfinite(epsilon)) throw DomainError("non-finite parameter");
  if (!(std::abs(detuning()) < 0.5)) throw DomainError("detuning must satisfy |delta| < 1/2");
  if (series_cutoff < std::abs(harmonic()) + 1) {
    throw DomainError("series cutoff must exceed the resonant harmonic");
  }
  if (!(action_min > 0.0 && action_max > action_min)) {
    throw DomainError("action range must satisfy 0 < min < max");
  }
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double karney_mean_s2(const KarneyParams& p, double action) {
  p.validate();
  check_action(p, action);
  const int cutoff = p.series_cutoff;
  const int n0 = p.harmonic();
  const auto j = bessel_j_orders(cutoff + 1, wave_argument(action));
  auto sq = [&](int m) { return j[std::abs(m)] * j[std::abs(m)]; };
  double sum = 0.0;
  for (int m = -cutoff; m <= cutoff; ++m) {
    if (m == n0) continue;
    sum += (sq(m + 1) - sq(m - 1)) / (m - p.nu);
  }
  sum += (sq(n0 + 1) - sq(n0 - 1)) * detuning_factor(p.detuning());
  return 0.5 * kPi * sum;
}

double karney_mean_s2_slope(const KarneyParams& p, double action) {
  p.validate();
  check_action(p, action);
  const int cutoff = p.series_cutoff;
  const int n0 = p.harmonic();
  const double x = wave_argument(action);
  const auto j = bessel_j_orders(cutoff + 2, x);
  auto value = [&](int m) {
    const int a = std::abs(m);
    return (m < 0 && a % 2) ? -j[a] : j[a];
  };
  // d/dI J_m^2 = 2 J_m J'_m / x.
  auto dsq = [&](int m) {
    const double deriv = 0.5 * (value(m - 1) - value(m + 1));
    return 2.0 * value(m) * deriv / x;
  };
  double sum = 0.0;
  for (int m = -cutoff; m <= cutoff; ++m) {
    if (m == n0) continue;
    sum += (dsq(m + 1) - dsq(m - 1)) / (m - p.nu);
  }
  sum += (dsq(n0 + 1) - dsq(n0 - 1)) * detuning_factor(p.detuning());
  return 0.5 * kPi * sum;
}

double karney_action_diffusion(const KarneyParams& p, double action) {
  p.validate();
  check_action(p, action);
  const int n0 = p.harmonic();
  const double jn = bessel_j(n0, wave_argument(action));
  const double s = sinc(kPi * p.detuning());
  return 0.5 * p.epsilon * p.epsilon * kPi * s * s * n0 * n0 * jn * jn;
}

LangevinModel karney_model(const KarneyParams& p) {
  p.validate();
  const int n0 = p.harmonic();
  const double amp = p.epsilon * std::sqrt(kPi) * sinc(kPi * p.detuning());
  const double drift_scale = p.epsilon * p.epsilon / (2.0 * kPi);

  ScalarField drift(
      "H0~", 1,
      [p, drift_scale](const PhasePoint& z) {
        return z[1] + drift_scale * karney_mean_s2(p, z[1]);
      },
      [p, drift_scale](const PhasePoint& z) -> StateVector {
        StateVector g(2);
        g << 0.0, 1.0 + drift_scale * karney_mean_s2_slope(p, z[1]);
        return g;
      });

  std::vector<ScalarField> noise;
  for (int mode = 0; mode < 2; ++mode) {
    noise.emplace_back(
        mode == 0 ? "Hcos" : "Hsin", 1,
        [=](const PhasePoint& z) {
          const double phase = n0 * z[0];
          const double jn = bessel_j(n0, wave_argument(z[1]));
          return amp * jn * (mode == 0 ? std::cos(phase) : std::sin(phase));
        },
        [=](const PhasePoint& z) -> StateVector {
          const double phase = n0 * z[0];
          const double x = wave_argument(z[1]);
          const double jn = bessel_j(n0, x);
          const double djn = bessel_j_derivative(n0, x) / x;  // d/dI J_n(sqrt(2I))
          const double c = std::cos(phase), s = std::sin(phase);
          StateVector g(2);
          if (mode == 0) {
            g << -amp * jn * n0 * s, amp * djn * c;
          } else {
            g << amp * jn * n0 * c, amp * djn * s;
          }
          return g;
        });
  }
  LangevinModel model = LangevinModel::from_hamiltonians("karney", drift, noise);
  model.domain_check = [p](const PhasePoint& z) { check_action(p, z[1]); };
  return model;
}

coarse::CovarianceKernel karney_kernel(const KarneyParams& p) {
  p.validate();
  const int n0 = p.harmonic();
  const double amp = 2.0 * kPi * sinc(kPi * p.detuning());
  // s1 = amp J_n(sqrt(2I)) sin(n theta + eta), eta uniform.
  auto differential_parts = [n0, p](const PhasePoint& z, double& jn, double& djn) {
    check_action(p, z[1]);
    const double x = wave_argument(z[1]);
    jn = bessel_j(n0, x);
    djn = bessel_j_derivative(n0, x) / x;
  };
  return coarse::CovarianceKernel::analytic(
      "karney", 1, [=](const PhasePoint& z1, const PhasePoint& z2) {
        double j1, d1, j2, d2;
        differential_parts(z1, j1, d1);
        differential_parts(z2, j2, d2);
        const double diff = n0 * (z1[0] - z2[0]);
        const double c = 0.5 * std::cos(diff), s = 0.5 * std::sin(diff);
        // E[ds1(z1) ds1(z2)^T] with ds1 = amp (n J cos, J' sin).
        StateMatrix beta(2, 2);
        beta(0, 0) = amp * amp * n0 * n0 * j1 * j2 * c;
        beta(0, 1) = -amp * amp * n0 * j1 * d2 * s;
        beta(1, 0) = amp * amp * n0 * d1 * j2 * s;
        beta(1, 1) = amp * amp * d1 * d2 * c;
        return raise_tensor(beta);
      });
}

}  // namespace shk::models
