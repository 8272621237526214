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

#include "shk/common.hpp"
#include "shk/quad/gauss_legendre.hpp"

#include "doctest.h"

#include <cmath>

using namespace shk::quad;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (int order : {4, 6, 8, 10, 12, 16, 20, 24, 32}) {
    const Rule& r = gauss_legendre(order);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int degree = 2 * order - 1;
    // Integral of x^degree-1 (even) over [-1, 1] is 2/degree.
    const double got =
        integrate_panel([degree](double x) { return std::pow(x, degree - 1); }, -1.0, 1.0, r);
    CHECK(got == doctest::Approx(2.0 / degree).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gauss_legendre(5), shk::DomainError);
}

TEST_CASE("composite rule and reusable nodes agree") {
  auto f = [](double x) { return std::exp(-x) * std::sin(3 * x); };
  const double a = integrate_composite(f, 0.0, 4.0, 8, 12);
  std::vector<double> x, w;
  composite_nodes(0.0, 4.0, 8, 12, x, w);
  double b = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) b += w[i] * f(x[i]);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
  // Closed form of the integral of e^-x sin 3x on [0, 4].
  const double exact = (3.0 - std::exp(-4.0) * (std::sin(12.0) + 3.0 * std::cos(12.0))) / 10.0;
  CHECK(a == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("adaptive rule handles endpoint singularities and kinks") {
  const double root = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(root == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  const double kink[] = {0.3};
  const double abs_val = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kink);
  CHECK(abs_val == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
  // Reversed limits flip the sign.
  CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("vector rule integrates every component") {
  using V = Eigen::Matrix<double, 2, 1>;
  const V got = integrate_adaptive_vector<2>([](double x) { return V(std::cos(x), x * x); }, 0.0,
                                             std::acos(-1.0));
  CHECK(got[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(std::pow(std::acos(-1.0), 3) / 3.0).epsilon(1e-12));
}
