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

#include "shk/phase/scalar_field.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shk {

// Stratonovich SDE dz = drift(z) dt + sum_k noise_k(z) o dW_k. When every
// field is Hamiltonian the generating functions are kept alongside.
struct LangevinModel {
  std::string name;
  int dim = 0;
  VectorFieldFn drift;
  std::vector<VectorFieldFn> noise;
  std::optional<ScalarField> drift_hamiltonian;
  std::vector<ScalarField> noise_hamiltonians;
  bool hamiltonian = false;
  // Throws DomainError outside the region where the model is defined.
  std::function<void(const PhasePoint&)> domain_check;

  static LangevinModel from_hamiltonians(std::string name, const ScalarField& drift,
                                         const std::vector<ScalarField>& noise);

  int noise_count() const { return static_cast<int>(noise.size()); }
  void validate() const;
};

}  // namespace shk
