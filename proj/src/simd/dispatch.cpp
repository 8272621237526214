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

#include "shk/common.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace shk::simd {

namespace {

Isa initial_isa() {
  const char* env = std::getenv("SHK_ISA");
  if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

bool isa_supported(Isa isa) { return isa == Isa::scalar || detected_isa() == Isa::avx2; }

Isa active_isa() { return current().load(); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError(std::string("instruction set not supported here: ") + isa_name(isa));
  }
  current().store(isa);
}

RadialKernel kernel_for(Isa isa) {
  return isa == Isa::avx2 ? &radial_kernel_avx2 : &radial_kernel_scalar;
}

RadialKernel active_kernel() { return kernel_for(active_isa()); }

}  // namespace shk::simd
