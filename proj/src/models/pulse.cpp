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

#include "shk/models/pulse.hpp"

#include "shk/phase/poisson.hpp"
#include "shk/quad/gauss_legendre.hpp"
#include "shk/random/philox.hpp"

#include <array>
#include <cmath>

namespace shk::models {

void PulseParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("pulse tau must be positive");
  if (!std::isfinite(phi0) || !std::isfinite(charge_to_mass)) {
    throw DomainError("pulse amplitude must be finite");
  }
  if (window == PulseWindow::custom && !custom_window) {
    throw DomainError("custom pulse window is missing");
  }
}

double PulseParams::m0() const {
  validate();
  const double amp = charge_to_mass * phi0;
  if (window != PulseWindow::custom) return amp;
  return amp * quad::integrate_composite(custom_window, 0.0, tau, 8, 16);
}

double PulseParams::m1() const {
  validate();
  const double amp = charge_to_mass * phi0;
  if (window != PulseWindow::custom) return amp * tau / 2.0;
  return amp * quad::integrate_composite(
                   [this](double s) { return (tau - s) * custom_window(s); }, 0.0, tau, 8, 16);
}

std::vector<ScalarField> pulse_noise_hamiltonians(const PulseParams& p) {
  const double m0 = p.m0(), m1 = p.m1();
  const double scale = 1.0 / std::sqrt(3.0 * p.tau);
  std::vector<ScalarField> out;
  for (int i = 0; i < 3; ++i) {
    out.emplace_back(
        "H" + std::to_string(i + 1), 3,
        [=](const PhasePoint& z) { return scale * (m1 * z[3 + i] - m0 * z[i]); },
        [=](const PhasePoint&) -> StateVector {
          StateVector g = StateVector::Zero(6);
          g[i] = -scale * m0;
          g[3 + i] = scale * m1;
          return g;
        });
  }
  return out;
}

LangevinModel pulse_model(const PulseParams& p) {
  ScalarField kinetic(
      "kinetic", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); },
      [](const PhasePoint& z) -> StateVector {
        StateVector g = StateVector::Zero(6);
        g.tail(3) = z.v();
        return g;
      });
  auto model = LangevinModel::from_hamiltonians("pulse", kinetic, pulse_noise_hamiltonians(p));
  // Constant noise fields; skip the generic gradient path.
  const double m0 = p.m0(), m1 = p.m1();
  const double scale = 1.0 / std::sqrt(3.0 * p.tau);
  model.drift = [](const PhasePoint& z) -> StateVector {
    StateVector d = StateVector::Zero(6);
    d.head(3) = z.v();
    return d;
  };
  for (int i = 0; i < 3; ++i) {
    StateVector x = StateVector::Zero(6);
    x[i] = scale * m1;
    x[3 + i] = scale * m0;
    model.noise[i] = [x](const PhasePoint&) { return x; };
  }
  return model;
}

namespace {

Vec3 random_direction(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) {
  const random::CounterRng rng(seed, stream);
  const auto a = rng.normal2(2 * draw);
  const auto b = rng.normal2(2 * draw + 1);
  Vec3 n(a[0], a[1], b[0]);
  // Probability zero, but keep the direction well defined.
  if (n.squaredNorm() < 1e-300) n = Vec3::UnitX();
  return n.normalized();
}

}  // namespace

coarse::PerturbationEnsemble pulse_ensemble(const PulseParams& p) {
  p.validate();
  coarse::PerturbationEnsemble ens;
  ens.name = "pulse";
  ens.dim = 3;
  ens.tau = p.tau;
  ens.epsilon = 1.0;
  ens.correlation_time = p.tau;
  ens.flow = coarse::free_streaming();
  ens.sample = [p](std::uint64_t seed, std::uint64_t draw) {
    const Vec3 n = random_direction(seed, 0x9175e, draw);
    const double amp = p.charge_to_mass * p.phi0;
    coarse::TimeDependentField h;
    h.dim = 3;
    auto potential = [n, amp](const PhasePoint& z) { return amp * n.dot(Vec3(z.x())); };
    switch (p.window) {
      case PulseWindow::impulse:
        h.impulses.push_back({0.5 * p.tau, potential});
        break;
      case PulseWindow::uniform:
        h.smooth = [potential, tau = p.tau](double, const PhasePoint& z) {
          return potential(z) / tau;
        };
        break;
      case PulseWindow::custom:
        h.smooth = [potential, u = p.custom_window](double t, const PhasePoint& z) {
          return potential(z) * u(t);
        };
        break;
    }
    return h;
  };
  return ens;
}

coarse::CovarianceKernel pulse_kernel(const PulseParams& p) {
  const double m0 = p.m0(), m1 = p.m1();
  StateMatrix alpha = StateMatrix::Zero(6, 6);
  alpha.topLeftCorner(3, 3) = m1 * m1 / 3.0 * Mat3::Identity();
  alpha.topRightCorner(3, 3) = m0 * m1 / 3.0 * Mat3::Identity();
  alpha.bottomLeftCorner(3, 3) = m0 * m1 / 3.0 * Mat3::Identity();
  alpha.bottomRightCorner(3, 3) = m0 * m0 / 3.0 * Mat3::Identity();
  return coarse::CovarianceKernel::analytic(
      "pulse", 3, [alpha](const PhasePoint&, const PhasePoint&) { return alpha; });
}

MicroTrajectories pulse_micro_simulate(const PulseParams& p, const std::vector<PhasePoint>& initial,
                                       std::size_t intervals, std::uint64_t seed,
                                       DirectionSharing sharing, std::size_t record_every) {
  p.validate();
  if (record_every < 1) throw DomainError("record stride must be >= 1");
  for (const auto& z : initial) {
    if (z.dim() != 3) throw DimensionError("pulse dynamics is three-dimensional");
  }
  const double m0 = p.m0(), m1 = p.m1();
  MicroTrajectories out;
  out.particles = initial.size();
  std::vector<PhasePoint> current = initial;
  for (std::size_t k = 0; k <= intervals; ++k) {
    if (k % record_every == 0 || k == intervals) {
      out.times.push_back(static_cast<double>(k) * p.tau);
      out.states.insert(out.states.end(), current.begin(), current.end());
    }
    if (k == intervals) break;
    for (std::size_t i = 0; i < current.size(); ++i) {
      const std::uint64_t stream = sharing == DirectionSharing::shared ? 0 : i;
      const Vec3 n = random_direction(seed, stream, k);
      const Vec3 x = current[i].x();
      const Vec3 v = current[i].v();
      current[i] = PhasePoint(x + v * p.tau - m1 * n, v - m0 * n);
    }
  }
  return out;
}

LangevinModel counterexample_model(const PulseParams& p, const ScalarField& phase) {
  if (phase.dim() != 3) throw DimensionError("phase field must be three-dimensional");
  const double m0 = p.m0(), m1 = p.m1();
  const double scale = 1.0 / std::sqrt(3.0 * p.tau);
  LangevinModel model;
  model.name = "counterexample";
  model.dim = 3;
  model.hamiltonian = false;
  model.drift = [](const PhasePoint& z) -> StateVector {
    StateVector d = StateVector::Zero(6);
    d.head(3) = z.v();
    return d;
  };
  for (int family = 0; family < 2; ++family) {
    for (int i = 0; i < 3; ++i) {
      StateVector c = StateVector::Zero(6);
      c[i] = scale * m1;
      c[3 + i] = scale * m0;
      model.noise.push_back([c, family, phase](const PhasePoint& z) -> StateVector {
        const double f = phase(z);
        return family == 0 ? StateVector(std::cos(f) * c) : StateVector(-std::sin(f) * c);
      });
    }
  }
  return model;
}

}  // namespace shk::models
