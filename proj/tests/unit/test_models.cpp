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

#include "shk/langevin/fokker_planck.hpp"
#include "shk/models/bessel.hpp"
#include "shk/models/karney.hpp"
#include "shk/models/pulse.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace shk;
using namespace shk::models;

TEST_CASE("Bessel J_n against the standard library") {
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (double x = 0.0; x <= 50.0; x += 0.37) {
      worst = std::max(worst, std::abs(bessel_j(n, x) - std::cyl_bessel_j(double(n), x)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Bessel orders, derivative and special values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  const auto all = bessel_j_orders(12, 7.5);
  for (int n = 0; n <= 12; ++n) CHECK(all[n] == doctest::Approx(bessel_j(n, 7.5)).epsilon(1e-12));
  const double h = 1e-5;
  const double fd = (bessel_j(4, 3.0 + h) - bessel_j(4, 3.0 - h)) / (2 * h);
  CHECK(bessel_j_derivative(4, 3.0) == doctest::Approx(fd).epsilon(1e-8));
  // First zero of J_0.
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-14);
}

TEST_CASE("pulse moments for impulse, uniform and custom windows") {
  PulseParams p;
  p.phi0 = 2.0;
  p.charge_to_mass = -0.5;
  p.tau = 3.0;
  CHECK(p.m0() == doctest::Approx(-1.0));
  CHECK(p.m1() == doctest::Approx(-1.5));
  p.window = PulseWindow::custom;
  p.custom_window = [](double) { return 1.0 / 3.0; };
  CHECK(p.m0() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(p.m1() == doctest::Approx(-1.5).epsilon(1e-12));
  // Linearly falling window: m1 = 2 amp tau / 3.
  p.custom_window = [](double s) { return 2.0 * (3.0 - s) / 9.0; };
  CHECK(p.m1() == doctest::Approx(-1.0 * 2.0).epsilon(1e-12));
  p.custom_window = nullptr;
  CHECK_THROWS_AS(p.m0(), DomainError);
}

TEST_CASE("pulse exact map kicks by m0 and m1 along a unit direction") {
  PulseParams p;
  p.tau = 2.0;
  StateVector s(6);
  s << 0, 0, 0, 0.5, 0, 0;
  const auto traj = pulse_micro_simulate(p, {PhasePoint::from_state(s)}, 3, 17);
  REQUIRE(traj.times.size() == 4);
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 dv = Vec3(traj.at(k + 1, 0).v()) - Vec3(traj.at(k, 0).v());
    const Vec3 dx = Vec3(traj.at(k + 1, 0).x()) - Vec3(traj.at(k, 0).x());
    const Vec3 n = -dv / p.m0();
    CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((dx - (Vec3(traj.at(k, 0).v()) * p.tau - p.m1() * n)).norm() < 1e-14);
  }
}

TEST_CASE("pulse model diffusion equals the kernel's vv block over two") {
  PulseParams p;
  p.phi0 = 1.7;
  const auto model = pulse_model(p);
  const StateMatrix q = langevin::noise_matrix(model, PhasePoint::origin(3));
  const StateMatrix alpha = pulse_kernel(p)(PhasePoint::origin(3), PhasePoint::origin(3));
  CHECK((q * p.tau).isApprox(alpha, 1e-12));
  CHECK(q(3, 3) == doctest::Approx(p.m0() * p.m0() / (3 * p.tau)));
}

TEST_CASE("counterexample has the same noise magnitude but is not Hamiltonian") {
  PulseParams p;
  const ScalarField phase("x1", 3, [](const PhasePoint& z) { return z[0]; });
  const auto ce = counterexample_model(p, phase);
  CHECK_FALSE(ce.hamiltonian);
  CHECK(ce.noise_count() == 6);
  StateVector s(6);
  s << 0.8, 0, 0, 0, 0, 0;
  const auto z = PhasePoint::from_state(s);
  const StateMatrix a = langevin::noise_matrix(ce, z);
  const StateMatrix b = langevin::noise_matrix(pulse_model(p), z);
  CHECK(a.isApprox(b, 1e-12));
}

TEST_CASE("Karney diffusion closed form matches the noise fields at any phase") {
  KarneyParams k;
  k.nu = 3.15;
  const auto model = karney_model(k);
  const double expected = karney_action_diffusion(k, 2.5);
  for (double theta : {0.0, 0.4, 2.0, 5.0}) {
    Eigen::VectorXd x(1), v(1);
    x << theta;
    v << 2.5;
    const StateMatrix q = langevin::noise_matrix(model, PhasePoint(x, v));
    CHECK(0.5 * q(1, 1) == doctest::Approx(expected).epsilon(1e-9));
  }
  // eps^2 pi / 2 sinc^2(pi delta) n^2 J_n^2(sqrt(2 I)).
  const double s = std::sin(std::numbers::pi * 0.15) / (std::numbers::pi * 0.15);
  const double j = std::cyl_bessel_j(3.0, std::sqrt(5.0));
  CHECK(expected == doctest::Approx(0.01 * std::numbers::pi / 2 * s * s * 9 * j * j).epsilon(1e-10));
  CHECK(k.harmonic() == 3);
  CHECK(sinc(0.0) == 1.0);
}

TEST_CASE("Karney mean kick slope matches a finite difference") {
  KarneyParams k;
  const double h = 1e-5;
  const double fd = (karney_mean_s2(k, 2.0 + h) - karney_mean_s2(k, 2.0 - h)) / (2 * h);
  CHECK(karney_mean_s2_slope(k, 2.0) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("Karney domain is enforced") {
  KarneyParams k;
  CHECK_THROWS_AS(karney_action_diffusion(k, 0.01), DomainError);
  k.nu = 2.5;
  CHECK_THROWS_AS(k.validate(), DomainError);
  k.nu = 2.0;
  k.action_max = k.action_min;
  CHECK_THROWS_AS(k.validate(), DomainError);
}
