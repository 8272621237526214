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

#include "shk/coarse/time_field.hpp"

#include "shk/phase/poisson.hpp"

namespace shk::coarse {

FlowMap free_streaming() {
  return [](const PhasePoint& z, double t) { return free_streaming_flow(z, t); };
}

void PerturbationEnsemble::validate() const {
  check_dimension(dim);
  if (!(tau > 0.0)) throw DomainError("ensemble '" + name + "': tau must be positive");
  if (!(correlation_time > 0.0)) {
    throw DomainError("ensemble '" + name + "': correlation time must be positive");
  }
  if (!(epsilon >= 0.0)) throw DomainError("ensemble '" + name + "': epsilon must be >= 0");
  if (!flow || !sample) throw Error("ensemble '" + name + "' is missing its flow or sampler");
}

}  // namespace shk::coarse
