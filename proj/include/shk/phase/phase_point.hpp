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

#include <functional>

namespace shk {

// A point z = (x, v) of the phase space R^n x R^n, n in {1, 2, 3}.
class PhasePoint {
 public:
  PhasePoint() = default;
  PhasePoint(const Eigen::Ref<const Eigen::VectorXd>& x,
             const Eigen::Ref<const Eigen::VectorXd>& v);

  // z laid out as (x_1..x_n, v_1..v_n).
  static PhasePoint from_state(const StateVector& z);
  static PhasePoint origin(int n);

  int dim() const { return n_; }
  auto x() const { return z_.head(n_); }
  auto v() const { return z_.tail(n_); }
  const StateVector& state() const { return z_; }
  double operator[](int i) const { return z_[i]; }

 private:
  StateVector z_;
  int n_ = 0;
};

using VectorFieldFn = std::function<StateVector(const PhasePoint&)>;

// Throws DimensionError unless 1 <= n <= 3.
void check_dimension(int n);

}  // namespace shk
