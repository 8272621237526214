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

#include "shk/random/philox.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace shk::random;

// Known-answer vectors of Philox4x32-10 from the Random123 distribution.
TEST_CASE("philox known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
        Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                   {0xffffffffu, 0xffffffffu}) ==
        Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   {0xa4093822u, 0x299f31d0u}) ==
        Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("draws are pure functions of seed, stream and index") {
  const CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  CHECK(a.block(11) == b.block(11));
  CHECK(a.block(11) != c.block(11));
  CHECK(a.block(11) != d.block(11));
  CHECK(a.block(11) != a.block(12));
  // Streams above 2^32 are distinct too.
  CHECK(CounterRng(1, 1ull << 33).block(0) != CounterRng(1, 0).block(0));
}

TEST_CASE("uniforms lie in the open unit interval with the right moments") {
  Sampler s(42, 0);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sq += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sq / n - 1.0 / 3.0) < 0.003);
}

TEST_CASE("normals have unit variance and vanishing odd moments") {
  Sampler s(5, 9);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
    m3 += x * x * x;
    m4 += x * x * x * x;
  }
  CHECK(std::abs(m1 / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(m2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m3 / n) < 4.0 * std::sqrt(15.0 / n));
  CHECK(std::abs(m4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
}

TEST_CASE("unit vectors are normalized and isotropic") {
  Sampler s(1, 2);
  const int n = 100000;
  double mean[3] = {0, 0, 0}, zz = 0.0;
  for (int i = 0; i < n; ++i) {
    double v[3];
    s.unit_vector(v);
    REQUIRE(std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0) < 1e-14);
    for (int k = 0; k < 3; ++k) mean[k] += v[k] / n;
    zz += v[2] * v[2] / n;
  }
  for (double m : mean) CHECK(std::abs(m) < 0.01);
  CHECK(std::abs(zz - 1.0 / 3.0) < 0.005);
}

TEST_CASE("Wiener increments scale with the step") {
  const WienerStream w(3, 0);
  const int steps = 50000;
  double a[2], sum = 0.0;
  for (int s = 0; s < steps; ++s) {
    w.increments(s, 0.25, a);
    sum += a[0] * a[0] + a[1] * a[1];
  }
  CHECK(std::abs(sum / (2.0 * steps) - 0.25) < 0.01);
  double b[2], c[2];
  w.increments(17, 0.25, b);
  w.increments(17, 0.25, c);
  CHECK(b[0] == c[0]);
  CHECK(b[1] == c[1]);
}
