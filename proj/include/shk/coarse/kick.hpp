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

#include "shk/coarse/time_field.hpp"

namespace shk::coarse {

struct QuadratureSpec {
  int order = 16;  // Gauss-Legendre nodes per panel
  int panels = 1;

  // Panel width below a quarter of the correlation time.
  static QuadratureSpec for_correlation_time(double tau, double correlation_time,
                                             int order = 16);
};

// First-order kick function: integral over lambda in [0, tau] of
// h_{tau - lambda}(F_{-lambda}(z)), impulses included exactly.
double compute_s1(const TimeDependentField& h, double tau, const PhasePoint& z,
                  const QuadratureSpec& quad, const FlowMap& flow = free_streaming());

// Second-order kick function: half the ordered double integral
// over b < a of {P_b, P_a}, where P_l = h_{tau - l} o F_{-l}.
double compute_s2(const TimeDependentField& h, double tau, const PhasePoint& z,
                  const QuadratureSpec& quad, const FlowMap& flow = free_streaming());

// s1 as a field of z (finite-difference gradient).
ScalarField s1_field(const TimeDependentField& h, double tau, const QuadratureSpec& quad,
                     const FlowMap& flow = free_streaming());

}  // namespace shk::coarse
