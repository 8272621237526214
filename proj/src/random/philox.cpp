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

#include <cmath>
#include <numbers>

namespace shk::random {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  // 53 bits, offset by half an ulp so the result is never 0 or 1.
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
  return (static_cast<double>(bits & ((1ull << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

Counter philox4x32(Counter c, Key k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_lo_(static_cast<std::uint32_t>(stream)),
      stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

Counter CounterRng::block(std::uint64_t index) const {
  return philox4x32({static_cast<std::uint32_t>(index),
                     static_cast<std::uint32_t>(index >> 32), stream_lo_, stream_hi_},
                    key_);
}

std::array<double, 2> CounterRng::uniform2(std::uint64_t index) const {
  const Counter r = block(index);
  return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
}

std::array<double, 2> CounterRng::normal2(std::uint64_t index) const {
  const auto [u1, u2] = uniform2(index);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double Sampler::uniform() {
  if (cached_left_ == 0 || cached_normal_) {
    cached_ = rng_.uniform2(index_++);
    cached_left_ = 2;
    cached_normal_ = false;
  }
  return cached_[2 - cached_left_--];
}

double Sampler::normal() {
  if (cached_left_ == 0 || !cached_normal_) {
    cached_ = rng_.normal2(index_++);
    cached_left_ = 2;
    cached_normal_ = true;
  }
  return cached_[2 - cached_left_--];
}

void Sampler::unit_vector(std::span<double> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : out) {
      x = normal();
      norm2 += x * x;
    }
  } while (norm2 < 1e-24);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : out) x *= inv;
}

void WienerStream::increments(std::uint64_t step, double dt, std::span<double> out) const {
  const double scale = std::sqrt(dt);
  // Counter = (pair index, step); up to 2^16 pairs of modes per step.
  for (std::size_t k = 0; k < out.size(); k += 2) {
    const auto z = rng_.normal2((step << 16) | (k / 2));
    out[k] = scale * z[0];
    if (k + 1 < out.size()) out[k + 1] = scale * z[1];
  }
}

}  // namespace shk::random
