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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shk::coarse {

// A delta-function kick in time: contributes g(z) * delta(t - time).
struct Impulse {
  double time;
  std::function<double(const PhasePoint&)> value;
};

// Time-dependent perturbation h_t(z) = smooth(t, z) + sum_k g_k(z) delta(t - t_k).
struct TimeDependentField {
  int dim = 0;
  std::function<double(double, const PhasePoint&)> smooth;  // may be empty
  std::vector<Impulse> impulses;
};

// Unperturbed flow F_t, as a map (z, t) -> F_t(z).
using FlowMap = std::function<PhasePoint(const PhasePoint&, double)>;

FlowMap free_streaming();

// Random family of perturbations. sample(seed, draw) returns draw number
// `draw` of the stream keyed by `seed`.
struct PerturbationEnsemble {
  std::string name;
  int dim = 0;
  double tau = 0.0;            // coarse-graining interval
  double epsilon = 1.0;        // perturbation strength
  double correlation_time = 0.0;
  FlowMap flow;
  std::function<TimeDependentField(std::uint64_t seed, std::uint64_t draw)> sample;

  void validate() const;
};

}  // namespace shk::coarse
