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

#include "shk/coarse/langevin_model.hpp"

#include <vector>

namespace shk::langevin {

// Raised when the Ito drift is not affine or the diffusion matrix is not
// quadratic, so the moment hierarchy does not close.
class NonAffineModelError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct MomentPrediction {
  std::vector<double> times;
  std::vector<StateVector> mean;
  std::vector<StateMatrix> covariance;
};

// Ito drift X_0 + (1/2) sum_k (grad X_k) X_k.
StateVector ito_drift(const LangevinModel& model, const PhasePoint& z);
// sum_k X_k X_k^T (twice the diffusion tensor).
StateMatrix noise_matrix(const LangevinModel& model, const PhasePoint& z);

// Mean and covariance of the Fokker-Planck solution, from the closed
// first/second moment equations. `records` equally spaced outputs on [0, T].
MomentPrediction fp_moment_prediction(const LangevinModel& model, const StateVector& mean0,
                                      const StateMatrix& covariance0, double duration,
                                      int records, bool allow_non_affine = false);

}  // namespace shk::langevin
