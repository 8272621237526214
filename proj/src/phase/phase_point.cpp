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

#include "shk/phase/phase_point.hpp"

#include <cmath>
#include <string>

namespace shk {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDim) {
    throw DimensionError("phase-space dimension must be 1, 2 or 3, got " +
                         std::to_string(n));
  }
}

namespace {

void check_finite(const StateVector& z) {
  for (int i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i])) {
      throw DomainError("phase point has a non-finite coordinate");
    }
  }
}

}  // namespace

PhasePoint::PhasePoint(const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (x.size() != v.size()) {
    throw DimensionError("position and velocity sizes differ");
  }
  n_ = static_cast<int>(x.size());
  check_dimension(n_);
  z_.resize(2 * n_);
  z_.head(n_) = x;
  z_.tail(n_) = v;
  check_finite(z_);
}

PhasePoint PhasePoint::from_state(const StateVector& z) {
  if (z.size() % 2 != 0) {
    throw DimensionError("state vector must have even length");
  }
  PhasePoint p;
  p.n_ = static_cast<int>(z.size() / 2);
  check_dimension(p.n_);
  check_finite(z);
  p.z_ = z;
  return p;
}

PhasePoint PhasePoint::origin(int n) {
  check_dimension(n);
  return from_state(StateVector::Zero(2 * n));
}

}  // namespace shk
