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

#include "shk/micro/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shk::micro {

namespace {

// Shared stepping loop; `record` sees (step, x, v, energy).
template <class Record>
void verlet_loop(const IonField& field, const PhasePoint& start, double duration,
                 const VerletOptions& options, Record&& record, double& max_drift) {
  if (start.dim() != 3) throw DimensionError("micro dynamics is three-dimensional");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw DomainError("duration must be non-negative");
  }
  Vec3 x = start.x(), v = start.v();
  const double speed = v.norm();
  double dt = options.dt;
  if (dt <= 0.0) {
    if (!(speed > 0.0)) throw DomainError("default time step needs a nonzero velocity");
    dt = default_time_step(field.params(), speed);
  }
  const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  if (steps > 0) dt = duration / static_cast<double>(steps);
  const double qm = field.params().charge_to_mass;

  Vec3 a;
  double phi;
  field.evaluate(x, a, phi);
  const double e0 = 0.5 * v.squaredNorm() + qm * phi;
  // The mean ion potential is a constant offset that can nearly cancel the
  // kinetic energy, so drift is measured against the larger of the two.
  const double scale = std::max({std::abs(e0), 0.5 * v.squaredNorm(), 1e-300});
  max_drift = 0.0;
  record(0, x, v, e0, dt);
  for (std::size_t k = 1; k <= steps; ++k) {
    v += 0.5 * dt * a;
    x += dt * v;
    field.evaluate(x, a, phi);
    v += 0.5 * dt * a;
    const double e = 0.5 * v.squaredNorm() + qm * phi;
    if (!std::isfinite(e)) throw NumericalError("non-finite energy at step " + std::to_string(k));
    max_drift = std::max(max_drift, std::abs(e - e0) / scale);
    if (max_drift > options.energy_tolerance) {
      throw NumericalError("energy drift " + std::to_string(max_drift) + " exceeds tolerance at step " +
                           std::to_string(k) + "; reduce dt");
    }
    record(k, x, v, e, dt);
  }
}

}  // namespace

double default_time_step(const lorentz::LorentzParams& params, double speed) {
  if (!(speed > 0.0)) throw DomainError("speed must be positive");
  return 0.05 / (params.plasma_parameter * speed);
}

MicroTrajectory verlet_trajectory(const IonField& field, const PhasePoint& start, double duration,
                                  const VerletOptions& options) {
  if (options.record_every == 0) throw DomainError("record_every must be positive");
  MicroTrajectory out;
  std::size_t last_step = 0;
  PhasePoint last;
  double last_energy = 0.0;
  verlet_loop(
      field, start, duration, options,
      [&](std::size_t k, const Vec3& x, const Vec3& v, double e, double dt) {
        out.dt = dt;
        last_step = k;
        last = PhasePoint(x, v);
        last_energy = e;
        if (k % options.record_every == 0) {
          out.states.push_back(last);
          out.energy.push_back(e);
          out.times.push_back(static_cast<double>(k) * dt);
        }
      },
      out.max_energy_drift);
  if (last_step % options.record_every != 0) {
    out.states.push_back(last);
    out.energy.push_back(last_energy);
    out.times.push_back(static_cast<double>(last_step) * out.dt);
  }
  return out;
}

PhasePoint verlet_advance(const IonField& field, const PhasePoint& start, double duration,
                          const VerletOptions& options, double* max_energy_drift) {
  Vec3 x_end, v_end;
  double drift = 0.0;
  verlet_loop(
      field, start, duration, options,
      [&](std::size_t, const Vec3& x, const Vec3& v, double, double) {
        x_end = x;
        v_end = v;
      },
      drift);
  if (max_energy_drift != nullptr) *max_energy_drift = drift;
  return PhasePoint(x_end, v_end);
}

}  // namespace shk::micro
