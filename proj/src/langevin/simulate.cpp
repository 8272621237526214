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

#include "shk/parallel.hpp"
#include "shk/random/philox.hpp"

#include <cmath>
#include <string>

namespace shk::langevin {

EnsembleTrajectories simulate_flow(const LangevinModel& model,
                                   std::span<const PhasePoint> initial,
                                   const FlowOptions& options) {
  model.validate();
  if (initial.empty()) throw DomainError("no initial points");
  if (!(options.dt > 0.0) || !(options.duration > 0.0)) {
    throw DomainError("duration and dt must be positive");
  }
  if (options.record_every < 1) throw DomainError("record stride must be >= 1");
  if (options.mode == NoiseMode::paired && initial.size() % 2 != 0) {
    throw DomainError("paired noise needs an even number of particles");
  }
  for (const auto& z : initial) {
    if (z.dim() != model.dim) throw DimensionError("initial point has the wrong dimension");
  }

  const long long steps = std::max(1LL, std::llround(options.duration / options.dt));
  const double dt = options.duration / static_cast<double>(steps);
  std::vector<long long> recorded;
  for (long long s = 0; s <= steps; s += options.record_every) recorded.push_back(s);
  if (recorded.back() != steps) recorded.push_back(steps);

  EnsembleTrajectories out;
  out.dim = model.dim;
  out.particles = initial.size();
  out.dt = dt;
  out.mode = options.mode;
  for (long long s : recorded) out.times.push_back(static_cast<double>(s) * dt);
  out.states.resize(recorded.size() * initial.size());

  const std::size_t modes = model.noise.size();
  parallel_for(initial.size(), options.workers, [&](std::size_t p) {
    std::uint64_t stream = 0;
    switch (options.mode) {
      case NoiseMode::shared: stream = 0; break;
      case NoiseMode::independent: stream = p; break;
      case NoiseMode::paired: stream = p / 2; break;
    }
    const random::WienerStream wiener(options.seed, options.stream_offset + stream);
    std::vector<double> dW(modes);
    PhasePoint z = initial[p];
    std::size_t next_record = 0;
    for (long long s = 0; s <= steps; ++s) {
      if (next_record < recorded.size() && recorded[next_record] == s) {
        out.states[next_record * initial.size() + p] = z;
        ++next_record;
      }
      if (s == steps) break;
      wiener.increments(static_cast<std::uint64_t>(s), dt, dW);
      try {
        z = stratonovich_step(model, z, dt, dW, options.scheme);
      } catch (const DomainError& e) {
        throw DomainError("particle " + std::to_string(p) + ", step " + std::to_string(s) +
                          ": " + e.what());
      } catch (const NumericalError& e) {
        throw NumericalError("particle " + std::to_string(p) + ", step " + std::to_string(s) +
                             ": " + e.what());
      }
    }
  });
  return out;
}

}  // namespace shk::langevin
