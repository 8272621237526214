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
#include "shk/langevin/integrate.hpp"
#include "shk/langevin/statistics.hpp"
#include "shk/models/karney.hpp"
#include "shk/models/pulse.hpp"

#include "doctest.h"

#include <cmath>

using namespace shk;
using namespace shk::langevin;

namespace {

LangevinModel oscillator() {
  const ScalarField h("H", 1, [](const PhasePoint& z) { return 0.5 * (z[0] * z[0] + z[1] * z[1]); },
                      [](const PhasePoint& z) -> StateVector { return z.state(); });
  return LangevinModel::from_hamiltonians("oscillator", h, {});
}

}  // namespace

TEST_CASE("moment equations of the pulse model match the closed form") {
  // dx = v dt + a dW, dv = b dW per axis:
  // Var v = b^2 t, Cov(x, v) = a b t + b^2 t^2 / 2, Var x = a^2 t + a b t^2 + b^2 t^3 / 3.
  models::PulseParams p;
  p.tau = 2.0;
  p.phi0 = 0.8;
  const double a = p.m1() / std::sqrt(3 * p.tau), b = p.m0() / std::sqrt(3 * p.tau);
  const auto model = models::pulse_model(p);
  const auto pred = fp_moment_prediction(model, StateVector::Zero(6), StateMatrix::Zero(6, 6), 3.0, 4);
  const double t = pred.times.back();
  const StateMatrix& c = pred.covariance.back();
  CHECK(c(3, 3) == doctest::Approx(b * b * t).epsilon(1e-8));
  CHECK(c(0, 3) == doctest::Approx(a * b * t + b * b * t * t / 2).epsilon(1e-8));
  CHECK(c(0, 0) == doctest::Approx(a * a * t + a * b * t * t + b * b * t * t * t / 3).epsilon(1e-8));
  CHECK(std::abs(c(0, 1)) < 1e-12);
}

TEST_CASE("simulated pulse ensemble follows the moment equations") {
  models::PulseParams p;
  const auto model = models::pulse_model(p);
  FlowOptions opt;
  opt.duration = 4.0;
  opt.dt = 0.5;
  opt.seed = 9;
  const std::vector<PhasePoint> init(20000, PhasePoint::origin(3));
  const auto traj = simulate_flow(model, init, opt);
  const auto stats = estimate_statistics(traj, coordinate_observables(3));
  const auto pred = fp_moment_prediction(model, StateVector::Zero(6), StateMatrix::Zero(6, 6), 4.0, 2);
  const Eigen::Index last = stats.variance.rows() - 1;
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(stats.variance(last, i) - pred.covariance.back()(i, i)) <
          4.0 * stats.variance_stderr(last, i));
    CHECK(std::abs(stats.mean(last, i)) < 4.0 * stats.mean_stderr(last, i));
  }
}

TEST_CASE("implicit midpoint conserves a quadratic Hamiltonian") {
  const auto model = oscillator();
  StateVector s(2);
  s << 1.0, 0.0;
  PhasePoint zm = PhasePoint::from_state(s), zh = zm;
  for (int i = 0; i < 1000; ++i) {
    zm = stratonovich_step(model, zm, 0.1, {}, Scheme::implicit_midpoint);
    zh = stratonovich_step(model, zh, 0.1, {}, Scheme::heun);
  }
  CHECK(zm.state().squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(zh.state().squaredNorm() - 1.0) > 1e-4);
}

TEST_CASE("zero noise gives identical deterministic particles") {
  models::PulseParams p;
  p.phi0 = 0.0;
  StateVector s = StateVector::Zero(6);
  s[3] = 1.0;
  const std::vector<PhasePoint> init(8, PhasePoint::from_state(s));
  FlowOptions opt;
  opt.duration = 2.0;
  opt.dt = 0.25;
  const auto traj = simulate_flow(models::pulse_model(p), init, opt);
  for (std::size_t i = 0; i < init.size(); ++i) {
    CHECK(traj.at(traj.records() - 1, i)[0] == doctest::Approx(2.0));
  }
}

TEST_CASE("results do not depend on the worker count") {
  models::KarneyParams k;
  Eigen::VectorXd x(1), v(1);
  std::vector<PhasePoint> init;
  for (int i = 0; i < 24; ++i) {
    x << 0.25 * i;
    v << 2.0;
    init.emplace_back(x, v);
  }
  FlowOptions opt;
  opt.duration = 1.0;
  opt.dt = 0.1;
  opt.seed = 4;
  const auto one = simulate_flow(models::karney_model(k), init, opt);
  opt.workers = 3;
  const auto three = simulate_flow(models::karney_model(k), init, opt);
  for (std::size_t i = 0; i < one.states.size(); ++i) {
    CHECK(one.states[i].state() == three.states[i].state());
  }
}

TEST_CASE("shared and paired noise modes") {
  models::PulseParams p;
  const std::vector<PhasePoint> init(4, PhasePoint::origin(3));
  FlowOptions opt;
  opt.duration = 1.0;
  opt.dt = 0.5;
  opt.mode = NoiseMode::paired;
  const auto paired = simulate_flow(models::pulse_model(p), init, opt);
  CHECK(paired.at(1, 0).state() == paired.at(1, 1).state());
  CHECK(paired.at(1, 0).state() != paired.at(1, 2).state());
  opt.mode = NoiseMode::shared;
  const auto shared = simulate_flow(models::pulse_model(p), init, opt);
  CHECK(shared.at(1, 0).state() == shared.at(1, 3).state());
  opt.mode = NoiseMode::paired;
  CHECK_THROWS_AS(simulate_flow(models::pulse_model(p), std::vector<PhasePoint>(3, PhasePoint::origin(3)), opt),
                  DomainError);
}

TEST_CASE("Ito drift and non-affine models") {
  models::PulseParams p;
  StateVector s(6);
  s << 0, 0, 0, 1, 2, 3;
  const StateVector d = ito_drift(models::pulse_model(p), PhasePoint::from_state(s));
  CHECK(d.head(3).isApprox(Vec3(1, 2, 3), 1e-9));
  CHECK(d.tail(3).norm() < 1e-9);
  const auto k = models::karney_model({});
  CHECK_THROWS_AS(fp_moment_prediction(k, StateVector::Constant(2, 2.0), StateMatrix::Zero(2, 2), 1.0, 2),
                  NonAffineModelError);
}
