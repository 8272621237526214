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

#include "shk/coarse/kl_decompose.hpp"
#include "shk/phase/poisson.hpp"

#include <cmath>

namespace shk {

LangevinModel LangevinModel::from_hamiltonians(std::string name, const ScalarField& drift,
                                               const std::vector<ScalarField>& noise) {
  LangevinModel model;
  model.name = std::move(name);
  model.dim = drift.dim();
  model.drift = [drift](const PhasePoint& z) { return hamiltonian_vector_field(drift, z); };
  for (const ScalarField& h : noise) {
    if (h.dim() != drift.dim()) throw DimensionError("noise hamiltonian dimension mismatch");
    model.noise.push_back([h](const PhasePoint& z) { return hamiltonian_vector_field(h, z); });
  }
  model.drift_hamiltonian = drift;
  model.noise_hamiltonians = noise;
  model.hamiltonian = true;
  return model;
}

void LangevinModel::validate() const {
  check_dimension(dim);
  if (!drift) throw Error("model '" + name + "' has no drift");
  for (const auto& f : noise) {
    if (!f) throw Error("model '" + name + "' has an empty noise field");
  }
}

namespace coarse {

LangevinModel assemble_langevin(const ScalarField& h0, const std::optional<ScalarField>& mean_s2,
                                const NoiseBasis& basis, double epsilon, double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  if (basis.dim() != h0.dim()) throw DimensionError("basis and hamiltonian differ in dimension");
  ScalarField drift = h0;
  if (mean_s2) drift = (h0 + mean_s2->scaled(epsilon * epsilon / tau)).renamed("H0~");
  std::vector<ScalarField> noise;
  const double scale = epsilon / std::sqrt(tau);
  for (const ScalarField& mode : basis.modes()) noise.push_back(mode.scaled(scale));
  return LangevinModel::from_hamiltonians("coarse-grained", drift, noise);
}

}  // namespace coarse
}  // namespace shk
