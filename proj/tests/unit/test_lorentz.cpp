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

#include "shk/lorentz/covariance.hpp"
#include "shk/lorentz/tensors.hpp"

#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace shk;
using namespace shk::lorentz;

TEST_CASE("regularized potential is C2 across its junctions") {
  const RegularizedPotential g(20.0, 0.1);
  const auto bp = g.breakpoints();
  for (int k = 1; k <= 3; ++k) {
    const double r = bp[k], e = 1e-9;
    CHECK(g.value(r - e) == doctest::Approx(g.value(r + e)).epsilon(1e-7));
    CHECK(g.derivative(r - e) == doctest::Approx(g.derivative(r + e)).epsilon(1e-6));
    // One-sided slope differences, Richardson-extrapolated.
    const double h = 1e-4 * std::min(bp[k] - bp[k - 1], k < 3 ? bp[k + 1] - bp[k] : 1.0);
    auto side = [&](double s) {
      auto d = [&](double step) { return (g.derivative(r + s * (e + step)) - g.derivative(r + s * e)) / (s * step); };
      return 2.0 * d(h) - d(2.0 * h);
    };
    CHECK(side(-1.0) == doctest::Approx(side(1.0)).epsilon(1e-3).scale(1.0));
  }
  CHECK(g.value(0.5) == doctest::Approx(2.0));
  CHECK(g.value(1.2) == 0.0);
  CHECK(g.derivative(0.0) == 0.0);
  CHECK(g.value(0.0) == doctest::Approx(1.5 * 20.0));
  CHECK(g.derivative_over_r(0.01) == doctest::Approx(g.derivative(0.01) / 0.01));
}

TEST_CASE("radial weight helpers are consistent") {
  const RegularizedPotential g(50.0, 0.2);
  for (double r : {0.005, 0.3, 1.1}) {
    CHECK(g.radial_weight(r) == doctest::Approx(r * g.value(r)).epsilon(1e-12));
    const double h = 1e-6;
    CHECK(g.radial_weight_slope(r) ==
          doctest::Approx((g.radial_weight(r + h) - g.radial_weight(r - h)) / (2 * h)).epsilon(1e-6));
    CHECK(g.cumulative_weight(r + h) - g.cumulative_weight(r - h) ==
          doctest::Approx(2 * h * g.radial_weight(r)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(RegularizedPotential(0.5), DomainError);
  CHECK_THROWS_AS(RegularizedPotential(10.0, 1.5), DomainError);
}

TEST_CASE("covariance agrees with the spherical overlap integral") {
  const IsotropicCovariance cov(20.0, 0.1);
  const auto& g = cov.potential();
  const auto bp = g.breakpoints();
  const std::vector<double> kinks(bp.begin() + 1, bp.end());
  auto profile = [&](double r) { return g.value(r); };
  for (double d : {0.0, 0.01, 0.2, 0.7, 1.3, 2.0}) {
    const double direct = overlap_integral(profile, d, g.support_radius(), kinks);
    CHECK(cov.value(d) == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK(cov.value(0.0) == doctest::Approx(cov.at_origin()).epsilon(1e-12));
  CHECK(cov.value(cov.support_radius() + 0.01) == 0.0);
}

TEST_CASE("covariance derivatives match finite differences on both sides of the switch") {
  for (double lambda : {20.0, 1000.0}) {
    const IsotropicCovariance cov(lambda, 0.1);
    for (double d : {0.003, 0.05, 0.4, 0.9, 1.7}) {
      const double h = 1e-5 * std::max(d, 0.01);
      CHECK(cov.slope(d) ==
            doctest::Approx((cov.value(d + h) - cov.value(d - h)) / (2 * h)).epsilon(1e-6));
      CHECK(cov.curvature(d) ==
            doctest::Approx((cov.slope(d + h) - cov.slope(d - h)) / (2 * h)).epsilon(1e-5));
    }
    CHECK(cov.curvature(1e-7) == doctest::Approx(cov.curvature_at_origin()).epsilon(1e-5));
  }
}

TEST_CASE("Lorentz tensor annihilates dH0 and has the classical form") {
  LorentzParams p;
  const Vec3 v(0.3, -1.2, 0.8);
  const Mat6 d = lorentz_tensor(v, p);
  Vec6 dh = Vec6::Zero();
  dh.tail(3) = v;
  CHECK((d * dh).norm() < 1e-15);
  const double nu = collision_frequency(v, p);
  const double s = v.norm();
  CHECK(nu == doctest::Approx(std::log(p.plasma_parameter) /
                              (8 * std::numbers::pi * p.plasma_parameter * s * s * s)));
  const Mat3 u = v.squaredNorm() * Mat3::Identity() - v * v.transpose();
  CHECK(d.bottomRightCorner<3, 3>().isApprox(nu * u, 1e-12));
  CHECK(d.topLeftCorner<3, 3>().norm() == 0.0);
}

TEST_CASE("closed and direct line integrals agree") {
  const IsotropicCovariance cov(20.0, 0.1);
  const Vec3 e = Vec3(1, 1, 0).normalized();
  for (int n = 0; n <= 2; ++n) {
    const Mat3 a = closed_form_In(n, e, cov), b = direct_In(n, e, cov, cov.support_radius());
    CHECK((a - b).norm() <= 1e-6 * a.norm());
  }
  // The trace of the field covariance at the origin is -3 C''(0).
  CHECK(field_covariance(Vec3::Zero(), cov).trace() ==
        doctest::Approx(-3 * cov.curvature_at_origin()));
}

TEST_CASE("Hamiltonian diffusion tensor is symmetric PSD and heats") {
  LorentzParams p;
  const IsotropicCovariance cov(p.plasma_parameter, p.delta_reg);
  const Vec3 v(0.0, 0.0, 1.0);
  const Mat6 d = diffusion_tensor_hl(v, p, cov);
  CHECK((d - d.transpose()).norm() < 1e-14 * d.norm());
  Eigen::SelfAdjointEigenSolver<Mat6> es(d);
  CHECK(es.eigenvalues().minCoeff() > -1e-12 * d.trace());
  // Energy rate: exact and numeric agree, and D_HL does not annihilate dH0.
  const double exact = energy_rate_exact(v, p, cov), numeric = energy_rate_numeric(v, p, cov);
  CHECK(numeric == doctest::Approx(exact).epsilon(1e-4));
  CHECK(exact > 0.0);
  Vec6 dh = Vec6::Zero();
  dh.tail(3) = v;
  CHECK((d * dh).norm() > 1e-3 * d.norm());
}

TEST_CASE("asymptotic scan moves towards the Lorentz tensor") {
  const auto rows = asymptotic_scan({100.0, 1000.0}, 1.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rel_dev_vv < rows[0].rel_dev_vv);
  CHECK(rows[1].par_perp_ratio < rows[0].par_perp_ratio);
  const std::string csv = scan_csv(rows);
  CHECK(csv.rfind("Lambda,rel_dev_vv,par_perp_ratio,chi_drift,", 0) == 0);
  CHECK_THROWS_AS(asymptotic_scan({1000.0, 100.0}, 1.0), DomainError);
}

TEST_CASE("non-Hamiltonian witness matches 2 nu w.U.w") {
  LorentzParams p;
  const auto r = non_hamiltonian_witness(Vec3(0.4, 0.9, -0.3), Vec3(1.0, -0.5, 0.2), p);
  CHECK(r.numeric == doctest::Approx(r.analytic).epsilon(1e-6));
  CHECK(r.analytic != 0.0);
}
