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

#include "shk/lorentz/potential.hpp"
#include "shk/micro/dynamics.hpp"
#include "shk/micro/ion_field.hpp"
#include "shk/micro/jump_moments.hpp"
#include "shk/random/philox.hpp"
#include "shk/simd/radial_kernel.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace shk;
using namespace shk::micro;

namespace {

lorentz::LorentzParams params(double lambda = 20.0) {
  lorentz::LorentzParams p;
  p.plasma_parameter = lambda;
  return p;
}

simd::RadialShape shape_of(const lorentz::RegularizedPotential& g) {
  return {g.plasma_parameter(), g.delta_reg(), g.core_coefficients(), g.taper_coefficients()};
}

}  // namespace

TEST_CASE("scalar kernel sums the profile over minimum images") {
  const lorentz::RegularizedPotential g(20.0, 0.1);
  const auto shape = shape_of(g);
  const double box = 5.0;
  // One ion just across the periodic boundary, one in the core, one outside.
  const std::vector<double> xs{4.8, 1.0, 2.5}, ys{1.0, 1.02, 1.0}, zs{1.0, 1.0, 1.0};
  const std::array<double, 3> point{0.3, 1.0, 1.0};
  const auto sum = simd::radial_kernel_scalar(shape, xs.data(), ys.data(), zs.data(), 3, point, box);
  const double r0 = 0.5, r1 = std::hypot(0.7, 0.02);
  CHECK(sum.value == doctest::Approx(g.value(r0) + g.value(r1)).epsilon(1e-13));
  // Gradient of sum_j g(|x - x_j|) with respect to x.
  const double gx = g.derivative(r0) * (0.5 / r0) + g.derivative(r1) * (-0.7 / r1);
  CHECK(sum.gx == doctest::Approx(gx).epsilon(1e-12));
}

TEST_CASE("AVX2 kernel agrees with the scalar kernel") {
  if (!simd::isa_supported(simd::Isa::avx2)) return;
  for (double lambda : {10.0, 20.0, 1000.0}) {
    const lorentz::RegularizedPotential g(lambda, 0.1);
    const auto shape = shape_of(g);
    random::Sampler s(3, static_cast<std::uint64_t>(lambda));
    const double box = 4.5;
    for (std::size_t count : {0, 1, 3, 4, 5, 63, 64, 65, 200}) {
      std::vector<double> xs(count), ys(count), zs(count);
      for (std::size_t i = 0; i < count; ++i) {
        xs[i] = s.uniform(0, box);
        ys[i] = s.uniform(0, box);
        zs[i] = s.uniform(0, box);
      }
      // Put some ions inside the core of the probe point.
      const std::array<double, 3> pt{s.uniform(0, box), s.uniform(0, box), s.uniform(0, box)};
      for (std::size_t i = 0; i < count; i += 7) {
        xs[i] = pt[0] + 0.3 / lambda;
        ys[i] = pt[1];
        zs[i] = pt[2];
      }
      const auto a = simd::radial_kernel_scalar(shape, xs.data(), ys.data(), zs.data(), count, pt, box);
      const auto b = simd::radial_kernel_avx2(shape, xs.data(), ys.data(), zs.data(), count, pt, box);
      const double scale = 1.0 + std::abs(a.value) + std::abs(a.gx) + std::abs(a.gy) + std::abs(a.gz);
      CHECK(std::abs(a.value - b.value) < 1e-13 * scale);
      CHECK(std::abs(a.gx - b.gx) < 1e-13 * scale);
      CHECK(std::abs(a.gy - b.gy) < 1e-13 * scale);
      CHECK(std::abs(a.gz - b.gz) < 1e-13 * scale);
    }
  }
}

TEST_CASE("ISA dispatch can be forced") {
  const auto saved = simd::active_isa();
  simd::force_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  CHECK(simd::active_kernel() == simd::kernel_for(simd::Isa::scalar));
  simd::force_isa(saved);
  CHECK(std::string(simd::isa_name(simd::Isa::avx2)) == "avx2");
}

TEST_CASE("ion count is the density times the volume") {
  const auto field = sample_ion_field(params(10.0), 10.0, 1);
  CHECK(field.size() == 10000);
  CHECK_FALSE(field.is_lazy());
  CHECK(field.cells_per_dim() == 9);
}

TEST_CASE("acceleration is minus q/m times the potential gradient") {
  const auto p = params();
  const auto field = sample_ion_field(p, 6.0, 2);
  const Vec3 x(1.3, 2.2, 4.9);
  const double h = 1e-6;
  Vec3 grad;
  for (int i = 0; i < 3; ++i) {
    Vec3 up = x, down = x;
    up[i] += h;
    down[i] -= h;
    grad[i] = (field.potential(up) - field.potential(down)) / (2 * h);
  }
  const Vec3 a = field.acceleration(x);
  CHECK((a + p.charge_to_mass * grad).norm() < 1e-6 * (1.0 + a.norm()));
}

TEST_CASE("uniform ions have a flat pair correlation") {
  const double box = 6.0;
  const auto field = sample_ion_field(params(10.0), box, 5);
  const auto pos = field.positions();
  // Pair counts in shells out to 1.5 against the ideal-gas expectation.
  const int shells = 6;
  std::vector<double> counts(shells, 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      Vec3 d = pos[i] - pos[j];
      for (int k = 0; k < 3; ++k) d[k] -= box * std::nearbyint(d[k] / box);
      const double r = d.norm();
      if (r < 1.5) counts[static_cast<int>(r / 0.25)] += 1.0;
    }
  }
  const double n = static_cast<double>(pos.size());
  for (int k = 0; k < shells; ++k) {
    const double r0 = 0.25 * k, r1 = r0 + 0.25;
    const double shell = 4.0 / 3.0 * std::numbers::pi * (r1 * r1 * r1 - r0 * r0 * r0);
    const double expected = 0.5 * n * (n - 1) * shell / (box * box * box);
    CHECK(std::abs(counts[k] / expected - 1.0) < 5.0 / std::sqrt(expected) + 0.01);
  }
}

TEST_CASE("lazy Poisson field has the right cell statistics and is reproducible") {
  const auto p = params(10.0);
  const double box = 12.0;
  auto a = IonField::lazy(p, box, 7, 3), b = IonField::lazy(p, box, 7, 3);
  // Touching every cell materializes the whole box.
  for (int i = 0; i < a.cells_per_dim(); ++i) {
    for (int j = 0; j < a.cells_per_dim(); ++j) {
      for (int k = 0; k < a.cells_per_dim(); ++k) {
        const double c = box / a.cells_per_dim();
        const Vec3 x((i + 0.5) * c, (j + 0.5) * c, (k + 0.5) * c);
        a.potential(x);
        b.potential(x);
      }
    }
  }
  const double mean = p.plasma_parameter * box * box * box;
  CHECK(std::abs(double(a.size()) - mean) < 5.0 * std::sqrt(mean));
  CHECK(a.size() == b.size());
  CHECK(a.positions() == b.positions());
}

TEST_CASE("empty field streams freely") {
  const auto field = empty_ion_field(params(), 5.0);
  StateVector s(6);
  s << 1, 1, 1, 0.5, -0.25, 1.0;
  const auto end = verlet_advance(field, PhasePoint::from_state(s), 2.0, {});
  CHECK(Vec3(end.x()).isApprox(Vec3(2.0, 0.5, 3.0), 1e-13));
  CHECK(Vec3(end.v()).isApprox(Vec3(0.5, -0.25, 1.0), 1e-15));
}

TEST_CASE("Verlet trajectories reverse in time") {
  const auto field = sample_ion_field(params(), 5.0, 3);
  StateVector s(6);
  s << 2.5, 2.5, 2.5, 1.0, 0.3, -0.2;
  VerletOptions opt;
  opt.dt = 1e-3;
  const auto mid = verlet_advance(field, PhasePoint::from_state(s), 3.0, opt);
  const PhasePoint back(mid.x(), -Vec3(mid.v()));
  const auto end = verlet_advance(field, back, 3.0, opt);
  CHECK((Vec3(end.x()) - Vec3(s.head(3))).norm() < 1e-8);
  CHECK((Vec3(end.v()) + Vec3(s.tail(3))).norm() < 1e-8);
}

TEST_CASE("a single ion scatters elastically") {
  const auto p = params();
  const IonField field(p, 8.0, {Vec3(4.0, 4.0, 4.0)});
  StateVector s(6);
  s << 1.0, 4.3, 4.0, 1.0, 0.0, 0.0;
  const auto traj = verlet_trajectory(field, PhasePoint::from_state(s), 6.0, {});
  const Vec3 vend = traj.states.back().v();
  CHECK(vend.norm() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(vend[1]) > 1e-4);  // deflected
  CHECK(traj.max_energy_drift < 1e-5);
}

TEST_CASE("jump moments are reproducible across worker counts") {
  const auto p = params();
  JumpMomentOptions opt;
  opt.intervals = 100;
  opt.jackknife_blocks = 10;
  const auto one = empirical_jump_moments(p, Vec3(0, 0, 2.0), opt);
  opt.workers = 2;
  const auto two = empirical_jump_moments(p, Vec3(0, 0, 2.0), opt);
  CHECK(one.diffusion == two.diffusion);
  CHECK(one.drift == two.drift);
  CHECK(one.diffusion(5, 5) > 0.0);
  CHECK(one.diffusion_stderr(5, 5) > 0.0);
  CHECK(one.max_energy_drift < 1e-4);
  const std::string csv = jump_moments_csv(one);
  CHECK(csv.rfind("kind,i,j,value,stderr", 0) == 0);
  opt.intervals = 10;
  CHECK_THROWS_AS(empirical_jump_moments(p, Vec3(0, 0, 2.0), opt), DomainError);
}

TEST_CASE("scalar and AVX2 kernels give the same trajectory") {
  if (!simd::isa_supported(simd::Isa::avx2)) return;
  const auto saved = simd::active_isa();
  const auto p = params();
  StateVector s(6);
  s << 3, 3, 3, 1.0, 0.4, 0.1;
  auto run = [&](simd::Isa isa) {
    simd::force_isa(isa);
    const auto field = sample_ion_field(p, 6.0, 9);
    return verlet_advance(field, PhasePoint::from_state(s), 2.0, {});
  };
  const auto a = run(simd::Isa::scalar), b = run(simd::Isa::avx2);
  simd::force_isa(saved);
  CHECK((a.state() - b.state()).norm() < 1e-9);
}
