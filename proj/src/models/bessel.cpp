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

#include "shk/models/bessel.hpp"

#include "shk/common.hpp"

#include <cmath>

namespace shk::models {

namespace {

// Ascending series; fine for moderate x.
double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's algorithm: recur downward from far above the turning point and
// normalize with J_0 + 2 sum J_{2k} = 1.
std::vector<double> miller(int max_order, double x) {
  const double top = std::max(static_cast<double>(max_order), x);
  int start = static_cast<int>(top + 30.0 + 6.0 * std::cbrt(top) + 2.0 * std::sqrt(top));
  if (start % 2) ++start;
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = 2.0 * k / x * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
      norm *= 1e-250;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j[k - 1];
  }
  norm += j[0];
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  for (int i = 0; i <= max_order; ++i) out[i] = j[i] / norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_orders(int max_order, double x) {
  if (max_order < 0) throw DomainError("bessel order must be non-negative");
  if (!std::isfinite(x)) throw DomainError("bessel argument must be finite");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double ax = std::abs(x);
  if (ax < 12.0) {
    for (int n = 0; n <= max_order; ++n) out[n] = series(n, ax);
  } else {
    out = miller(max_order, ax);
  }
  if (x < 0.0) {
    for (int n = 1; n <= max_order; n += 2) out[n] = -out[n];
  }
  return out;
}

double bessel_j(int n, double x) {
  const int m = std::abs(n);
  const double sign = (n < 0 && m % 2) ? -1.0 : 1.0;
  if (!std::isfinite(x)) throw DomainError("bessel argument must be finite");
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  const double ax = std::abs(x);
  double value = ax < 12.0 ? series(m, ax) : miller(m, ax)[m];
  if (x < 0.0 && m % 2) value = -value;
  return sign * value;
}

double bessel_j_derivative(int n, double x) {
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

}  // namespace shk::models
