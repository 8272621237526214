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

#include <immintrin.h>

namespace shk::simd {

namespace {

#define SHK_AVX2 __attribute__((target("avx2,fma")))

SHK_AVX2 inline __m256d horner5(const std::array<double, 6>& c, __m256d x) {
  __m256d y = _mm256_set1_pd(c[5]);
  for (int k = 4; k >= 0; --k) y = _mm256_fmadd_pd(y, x, _mm256_set1_pd(c[k]));
  return y;
}

SHK_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

SHK_AVX2 inline __m256d wrap(__m256d d, __m256d box, __m256d inv_box) {
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(d, inv_box),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  return _mm256_fnmadd_pd(box, k, d);
}

}  // namespace

SHK_AVX2 RadialSum radial_kernel_avx2(const RadialShape& shape, const double* xs,
                                      const double* ys, const double* zs, std::size_t count,
                                      const std::array<double, 3>& point, double box) {
  const double lambda = shape.lambda;
  const auto& c = shape.core;
  const auto& p = shape.taper;
  // Slope polynomials: core slope over r is lambda^3 * (2c2 + 3c3 s + 4c4 s^2 + 5c5 s^3).
  const std::array<double, 6> core_slope{2.0 * c[2], 3.0 * c[3], 4.0 * c[4], 5.0 * c[5], 0.0, 0.0};
  const std::array<double, 6> taper_slope{p[1], 2.0 * p[2], 3.0 * p[3], 4.0 * p[4], 5.0 * p[5], 0.0};

  const __m256d px = _mm256_set1_pd(point[0]), py = _mm256_set1_pd(point[1]),
                pz = _mm256_set1_pd(point[2]);
  const __m256d vbox = _mm256_set1_pd(box), inv_box = _mm256_set1_pd(1.0 / box);
  const __m256d support_sq = _mm256_set1_pd(shape.support() * shape.support());
  const __m256d vlambda = _mm256_set1_pd(lambda);
  const __m256d lam3 = _mm256_set1_pd(lambda * lambda * lambda);
  const __m256d core_r = _mm256_set1_pd(1.0 / lambda);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d inv_delta = _mm256_set1_pd(1.0 / shape.delta);

  __m256d gx = _mm256_setzero_pd(), gy = _mm256_setzero_pd(), gz = _mm256_setzero_pd(),
          val = _mm256_setzero_pd();
  // Most candidates lie outside the support. Pass one wraps and filters
  // four at a time into a compact buffer; pass two evaluates the profile
  // only on the survivors.
  constexpr std::size_t kChunk = 64;
  alignas(32) double bx[kChunk + 4], by[kChunk + 4], bz[kChunk + 4], br2[kChunk + 4];
  std::size_t j = 0;
  while (j + 4 <= count) {
    std::size_t kept = 0;
    for (; j + 4 <= count && kept + 4 <= kChunk; j += 4) {
      const __m256d dx = wrap(_mm256_sub_pd(px, _mm256_loadu_pd(xs + j)), vbox, inv_box);
      const __m256d dy = wrap(_mm256_sub_pd(py, _mm256_loadu_pd(ys + j)), vbox, inv_box);
      const __m256d dz = wrap(_mm256_sub_pd(pz, _mm256_loadu_pd(zs + j)), vbox, inv_box);
      const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
      int mask = _mm256_movemask_pd(_mm256_cmp_pd(r2, support_sq, _CMP_LT_OQ));
      if (mask == 0) continue;
      alignas(32) double tx[4], ty[4], tz[4], tr[4];
      _mm256_store_pd(tx, dx);
      _mm256_store_pd(ty, dy);
      _mm256_store_pd(tz, dz);
      _mm256_store_pd(tr, r2);
      while (mask != 0) {
        const int lane = __builtin_ctz(static_cast<unsigned>(mask));
        mask &= mask - 1;
        bx[kept] = tx[lane];
        by[kept] = ty[lane];
        bz[kept] = tz[lane];
        br2[kept] = tr[lane];
        ++kept;
      }
    }
    // Pad to a multiple of four with lanes outside the support.
    while (kept % 4 != 0) {
      bx[kept] = by[kept] = bz[kept] = 0.0;
      br2[kept] = 2.0 * shape.support() * shape.support();
      ++kept;
    }
    for (std::size_t k = 0; k < kept; k += 4) {
      const __m256d dx = _mm256_load_pd(bx + k), dy = _mm256_load_pd(by + k),
                    dz = _mm256_load_pd(bz + k), r2 = _mm256_load_pd(br2 + k);
      const __m256d inside = _mm256_cmp_pd(r2, support_sq, _CMP_LT_OQ);
      const __m256d r = _mm256_sqrt_pd(r2);
      // r = 0 only in the core lane, where the inverse is unused.
      const __m256d inv_r = _mm256_div_pd(one, _mm256_max_pd(r, _mm256_set1_pd(1e-300)));

      const __m256d s = _mm256_mul_pd(r, vlambda);
      const __m256d core_value = _mm256_mul_pd(vlambda, horner5(c, s));
      const __m256d core_sor = _mm256_mul_pd(lam3, horner5(core_slope, s));

      const __m256d mid_value = inv_r;
      const __m256d mid_sor =
          _mm256_mul_pd(_mm256_mul_pd(inv_r, inv_r), _mm256_sub_pd(_mm256_setzero_pd(), inv_r));

      const __m256d t = _mm256_mul_pd(_mm256_sub_pd(r, one), inv_delta);
      const __m256d taper_value = horner5(p, t);
      const __m256d taper_sor =
          _mm256_mul_pd(_mm256_mul_pd(horner5(taper_slope, t), inv_delta), inv_r);

      const __m256d in_core = _mm256_cmp_pd(r, core_r, _CMP_LT_OQ);
      const __m256d in_mid = _mm256_cmp_pd(r, one, _CMP_LE_OQ);
      __m256d value = _mm256_blendv_pd(taper_value, mid_value, in_mid);
      __m256d sor = _mm256_blendv_pd(taper_sor, mid_sor, in_mid);
      value = _mm256_blendv_pd(value, core_value, in_core);
      sor = _mm256_blendv_pd(sor, core_sor, in_core);
      value = _mm256_and_pd(value, inside);
      sor = _mm256_and_pd(sor, inside);

      val = _mm256_add_pd(val, value);
      gx = _mm256_fmadd_pd(sor, dx, gx);
      gy = _mm256_fmadd_pd(sor, dy, gy);
      gz = _mm256_fmadd_pd(sor, dz, gz);
    }
  }
  RadialSum sum;
  sum.gx = hsum(gx);
  sum.gy = hsum(gy);
  sum.gz = hsum(gz);
  sum.value = hsum(val);
  if (j < count) {
    sum += radial_kernel_scalar(shape, xs + j, ys + j, zs + j, count - j, point, box);
  }
  return sum;
}

}  // namespace shk::simd
