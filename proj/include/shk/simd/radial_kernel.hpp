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

#include <array>
#include <cstddef>

namespace shk::simd {

// Piecewise radial profile of one ion: a flat quintic core of radius
// 1/lambda, 1/r out to 1, and a quintic taper ending at 1 + delta.
struct RadialShape {
  double lambda;
  double delta;
  std::array<double, 6> core;   // value = lambda * core(r * lambda); core[1] must be 0
  std::array<double, 6> taper;  // value = taper((r - 1) / delta)

  double support() const { return 1.0 + delta; }
};

// Sum over a run of ions of the profile g(|x - x_j|) and of the gradient
// g'(r) (x - x_j) / r, with x - x_j taken as the minimum periodic image.
struct RadialSum {
  double gx = 0.0, gy = 0.0, gz = 0.0;
  double value = 0.0;

  RadialSum& operator+=(const RadialSum& o) {
    gx += o.gx;
    gy += o.gy;
    gz += o.gz;
    value += o.value;
    return *this;
  }
};

// Ion coordinates are structure-of-arrays; `box` is the periodic side.
using RadialKernel = RadialSum (*)(const RadialShape& shape, const double* xs, const double* ys,
                                   const double* zs, std::size_t count,
                                   const std::array<double, 3>& point, double box);

RadialSum radial_kernel_scalar(const RadialShape& shape, const double* xs, const double* ys,
                               const double* zs, std::size_t count,
                               const std::array<double, 3>& point, double box);
// Requires AVX2 and FMA at run time.
RadialSum radial_kernel_avx2(const RadialShape& shape, const double* xs, const double* ys,
                             const double* zs, std::size_t count,
                             const std::array<double, 3>& point, double box);

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
// Best instruction set the CPU supports.
Isa detected_isa();
bool isa_supported(Isa isa);
// The kernel in use: the detected one unless overridden by SHK_ISA=scalar
// or force_isa().
Isa active_isa();
void force_isa(Isa isa);
RadialKernel kernel_for(Isa isa);
RadialKernel active_kernel();

}  // namespace shk::simd
