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
#include <cstdint>
#include <span>

namespace shk::random {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds.
Counter philox4x32(Counter counter, Key key);

// Stateless generator keyed by (seed, stream). Every draw is a pure function
// of (seed, stream, index), which is what makes parallel runs reproducible.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  Counter block(std::uint64_t index) const;
  // Two uniforms in (0, 1) with 53 random bits each.
  std::array<double, 2> uniform2(std::uint64_t index) const;
  // Two independent standard normals (Box-Muller).
  std::array<double, 2> normal2(std::uint64_t index) const;

 private:
  Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
};

// Sequential view over a CounterRng, for code that just wants the next draw.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform on the unit sphere of R^n.
  void unit_vector(std::span<double> out);

 private:
  CounterRng rng_;
  std::uint64_t index_ = 0;
  std::array<double, 2> cached_{};
  int cached_left_ = 0;
  bool cached_normal_ = false;
};

// Gaussian increments dW_k ~ N(0, dt) for one time step of one stream.
class WienerStream {
 public:
  WienerStream(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  void increments(std::uint64_t step, double dt, std::span<double> out) const;

 private:
  CounterRng rng_;
};

}  // namespace shk::random
