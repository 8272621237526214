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

#include "shk/coarse/kick.hpp"
#include "shk/coarse/kl_decompose.hpp"
#include "shk/models/pulse.hpp"
#include "shk/phase/poisson.hpp"

#include "doctest.h"

#include <cmath>

using namespace shk;

namespace {

PhasePoint point(double x, double y, double z, double vx, double vy, double vz) {
  StateVector s(6);
  s << x, y, z, vx, vy, vz;
  return PhasePoint::from_state(s);
}

// Linear potential amp * n.x switched on uniformly over [0, tau].
coarse::TimeDependentField uniform_field(const Vec3& n, double amp, double tau) {
  coarse::TimeDependentField h;
  h.dim = 3;
  h.smooth = [n, amp, tau](double, const PhasePoint& z) { return amp / tau * n.dot(Vec3(z.x())); };
  return h;
}

}  // namespace

TEST_CASE("s1 of an impulse is the potential at the half-way streamed point") {
  const Vec3 n = Vec3(1, 2, -2).normalized();
  coarse::TimeDependentField h;
  h.dim = 3;
  h.impulses.push_back({0.5, [n](const PhasePoint& z) { return 0.7 * n.dot(Vec3(z.x())); }});
  const PhasePoint z = point(0.1, 0.2, 0.3, 1.0, -1.0, 0.5);
  const double expected = 0.7 * n.dot(Vec3(z.x()) - 0.5 * Vec3(z.v()));
  CHECK(coarse::compute_s1(h, 1.0, z, {}) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(coarse::compute_s2(h, 1.0, z, {}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("s1 and s2 of a uniform linear pulse") {
  // s1 = amp n.(x - v tau / 2); s2 = -amp^2 tau / 12 from the ordered
  // double integral of the constant bracket (amp / tau)^2 (b - a).
  const Vec3 n = Vec3(0, 0.6, 0.8);
  const double amp = 1.3, tau = 2.0;
  const auto h = uniform_field(n, amp, tau);
  const PhasePoint z = point(0.5, -0.1, 0.2, 0.3, 0.4, -0.6);
  const double s1 = amp * n.dot(Vec3(z.x()) - 0.5 * tau * Vec3(z.v()));
  CHECK(coarse::compute_s1(h, tau, z, {}) == doctest::Approx(s1).epsilon(1e-12));
  CHECK(coarse::compute_s2(h, tau, z, {}) == doctest::Approx(-amp * amp * tau / 12.0).epsilon(1e-9));
}

TEST_CASE("Monte-Carlo kernel of the pulse ensemble matches the closed form") {
  models::PulseParams p;
  p.tau = 1.0;
  const auto ens = models::pulse_ensemble(p);
  const std::vector<PhasePoint> pts{point(0, 0, 0, 0, 0, 0), point(1, -1, 0.5, 0.2, 0.1, 0)};
  const auto mc = coarse::estimate_covariance_kernel(ens, pts, 20000, 11);
  const auto exact = models::pulse_kernel(p);
  CHECK(mc.is_monte_carlo());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const StateMatrix diff = mc.at_points(i, j) - exact(pts[i], pts[j]);
      const StateMatrix err = mc.standard_error(i, j);
      for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) CHECK(std::abs(diff(a, b)) <= 5.0 * err(a, b) + 1e-12);
      }
    }
  }
}

TEST_CASE("KL basis of the pulse kernel is orthonormal and exact") {
  models::PulseParams p;
  const auto kernel = models::pulse_kernel(p);
  const auto grid = coarse::latin_hypercube(StateVector::Constant(6, -2.0),
                                            StateVector::Constant(6, 2.0), 20, 3);
  const auto basis = coarse::kl_decompose(kernel, grid);
  CHECK(basis.rank() == 3);
  CHECK(basis.captured_fraction() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(basis.rkhs_gram().isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-9));
  CHECK(basis.loop_residue() < 1e-10);
  // Every mode vanishes at the anchor.
  for (const auto& mode : basis.modes()) CHECK(std::abs(mode(basis.anchor())) < 1e-12);
  const PhasePoint z = point(0.3, 0.1, -0.4, 1.0, 0.2, 0.0);
  CHECK(basis.reconstructed_diagonal(z).isApprox(kernel(z, z), 1e-9));
}

TEST_CASE("assembled Langevin model carries the mean second-order kick") {
  models::PulseParams p;
  const auto kernel = models::pulse_kernel(p);
  const auto grid = coarse::latin_hypercube(StateVector::Constant(6, -1.0),
                                            StateVector::Constant(6, 1.0), 12, 5);
  const auto basis = coarse::kl_decompose(kernel, grid);
  const ScalarField h0("H0", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); });
  const ScalarField s2 = ScalarField::constant(3, -0.25);
  const auto model = coarse::assemble_langevin(h0, s2, basis, 0.5, 2.0);
  CHECK(model.hamiltonian);
  CHECK(model.noise_count() == 3);
  const PhasePoint z = point(0, 0, 0, 1, 2, 3);
  // Constant E[s2] adds nothing to the drift field.
  CHECK(model.drift(z).head(3).isApprox(Vec3(1, 2, 3), 1e-9));
}

TEST_CASE("KL rejects bad input") {
  const auto kernel = models::pulse_kernel({});
  CHECK_THROWS_AS(coarse::kl_decompose(kernel, {}), DomainError);
  coarse::KlOptions opt;
  opt.anchor = 5;
  CHECK_THROWS_AS(coarse::kl_decompose(kernel, {PhasePoint::origin(3)}, opt), DomainError);
  CHECK_THROWS_AS(coarse::kl_decompose(kernel, {PhasePoint::origin(2)}), DimensionError);
}
