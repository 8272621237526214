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

#include "shk/langevin/integrate.hpp"

#include <functional>
#include <string>
#include <vector>

namespace shk::langevin {

struct Observable {
  std::string name;
  std::function<double(const PhasePoint&)> value;
};

// Function of the two members (2j, 2j+1) of a pair.
struct PairObservable {
  std::string name;
  std::function<double(const PhasePoint&, const PhasePoint&)> value;
};

// Time series of ensemble moments. Matrices are (records x observables).
struct MomentSeries {
  std::vector<double> times;
  std::vector<std::string> names;
  Eigen::MatrixXd mean, mean_stderr;
  Eigen::MatrixXd variance, variance_stderr;
  // Covariance of an observable between the two members of each pair.
  Eigen::MatrixXd pair_covariance, pair_covariance_stderr;
  std::vector<std::string> pair_names;
  Eigen::MatrixXd pair_mean, pair_mean_stderr;
  Eigen::MatrixXd pair_variance, pair_variance_stderr;
  std::size_t samples = 0;
};

MomentSeries estimate_statistics(const EnsembleTrajectories& traj,
                                 const std::vector<Observable>& observables,
                                 const std::vector<PairObservable>& pair_observables = {});

// Coordinates z_i as observables named x1.., v1...
std::vector<Observable> coordinate_observables(int dim);

}  // namespace shk::langevin
