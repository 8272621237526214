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

#include "shk/simd/radial_kernel.hpp"

#include <cmath>

namespace shk::simd {

RadialSum radial_kernel_scalar(const RadialShape& shape, const double* xs, const double* ys,
                               const double* zs, std::size_t count,
                               const std::array<double, 3>& point, double box) {
  const double support_sq = shape.support() * shape.support();
  const double core = 1.0 / shape.lambda;
  const double inv_box = 1.0 / box;
  const auto& c = shape.core;
  const auto& p = shape.taper;
  RadialSum sum;
  for (std::size_t j = 0; j < count; ++j) {
    double dx = point[0] - xs[j], dy = point[1] - ys[j], dz = point[2] - zs[j];
    dx -= box * std::nearbyint(dx * inv_box);
    dy -= box * std::nearbyint(dy * inv_box);
    dz -= box * std::nearbyint(dz * inv_box);
    const double r2 = dx * dx + dy * dy + dz * dz;
    if (r2 >= support_sq) continue;
    const double r = std::sqrt(r2);
    double value, slope_over_r;
    if (r < core) {
      const double s = r * shape.lambda;
      value = shape.lambda * (c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5])))));
      const double lam3 = shape.lambda * shape.lambda * shape.lambda;
      slope_over_r = lam3 * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
    } else if (r <= 1.0) {
      value = 1.0 / r;
      slope_over_r = -value * value * value;
    } else {
      const double t = (r - 1.0) / shape.delta;
      value = p[0] + t * (p[1] + t * (p[2] + t * (p[3] + t * (p[4] + t * p[5]))));
      const double slope =
          (p[1] + t * (2.0 * p[2] + t * (3.0 * p[3] + t * (4.0 * p[4] + t * 5.0 * p[5])))) / shape.delta;
      slope_over_r = slope / r;
    }
    sum.value += value;
    sum.gx += slope_over_r * dx;
    sum.gy += slope_over_r * dy;
    sum.gz += slope_over_r * dz;
  }
  return sum;
}

}  // namespace shk::simd
