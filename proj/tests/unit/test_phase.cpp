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

#include "shk/phase/poisson.hpp"

#include "doctest.h"

#include <cmath>

using namespace shk;

namespace {

ScalarField coordinate(int i, int n) {
  return ScalarField("z" + std::to_string(i), n, [i](const PhasePoint& z) { return z[i]; },
                     [i, n](const PhasePoint&) -> StateVector {
                       StateVector g = StateVector::Zero(2 * n);
                       g[i] = 1.0;
                       return g;
                     });
}

PhasePoint point3(double a, double b, double c, double d, double e, double f) {
  StateVector s(6);
  s << a, b, c, d, e, f;
  return PhasePoint::from_state(s);
}

}  // namespace

TEST_CASE("canonical brackets") {
  const PhasePoint z = point3(0.3, -0.2, 0.5, 1.1, 0.7, -0.4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(poisson_bracket(coordinate(i, 3), coordinate(3 + j, 3), z) == (i == j ? 1.0 : 0.0));
      CHECK(poisson_bracket(coordinate(i, 3), coordinate(j, 3), z) == 0.0);
      CHECK(poisson_bracket(coordinate(3 + i, 3), coordinate(3 + j, 3), z) == 0.0);
    }
  }
}

TEST_CASE("bracket of x^2 and v1 v2 by hand") {
  // {x1^2, v1 v2} = 2 x1 v2.
  const ScalarField f("x1^2", 2, [](const PhasePoint& z) { return z[0] * z[0]; });
  const ScalarField g("v1 v2", 2, [](const PhasePoint& z) { return z[2] * z[3]; });
  StateVector s(4);
  s << 0.7, -1.3, 0.4, 2.5;
  const PhasePoint z = PhasePoint::from_state(s);
  CHECK(poisson_bracket(f, g, z) == doctest::Approx(2 * 0.7 * 2.5).epsilon(1e-9));
}

TEST_CASE("Hamiltonian vector field of the kinetic energy is free streaming") {
  const ScalarField h("H0", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); });
  const PhasePoint z = point3(1, 2, 3, 0.5, -0.25, 2.0);
  const StateVector x = hamiltonian_vector_field(h, z);
  CHECK(x.head(3).isApprox(z.v(), 1e-9));
  CHECK(x.tail(3).norm() < 1e-9);
}

TEST_CASE("lowering and raising are inverse and map X_h X_h to dh dh") {
  StateVector grad(6);
  grad << 0.1, -0.7, 0.3, 1.2, 0.5, -0.9;
  const StateVector x = hamiltonian_vector_field(grad);
  CHECK(lower_vector(x).isApprox(grad, 1e-15));
  const StateMatrix contra = x * x.transpose();
  CHECK(lower_tensor(contra).isApprox(grad * grad.transpose(), 1e-15));
  CHECK(raise_tensor(lower_tensor(contra)).isApprox(contra, 1e-15));
}

TEST_CASE("free streaming flow and Jacobian") {
  const PhasePoint z = point3(1, 0, 0, 0.5, 1, -1);
  const PhasePoint w = free_streaming_flow(z, 2.0);
  CHECK(w[0] == 2.0);
  CHECK(w[1] == 2.0);
  CHECK(w[2] == -2.0);
  const StateMatrix j = free_streaming_jacobian(3, 2.0);
  const StateMatrix omega = symplectic_matrix(3);
  CHECK((j.transpose() * omega * j).isApprox(omega, 1e-15));
}

TEST_CASE("Lie derivative of an invariant tensor vanishes") {
  const ScalarField h0("H0", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); });
  // dv (x) dv is transported unchanged by free streaming.
  const SymmetricTensorField alpha("dv dv", 3, [](const PhasePoint& z) -> StateMatrix {
    StateVector g = StateVector::Zero(6);
    g.tail(3) = z.v();
    return g * g.transpose();
  });
  const PhasePoint z = point3(0.1, 0.2, 0.3, 1.0, -0.5, 0.25);
  CHECK(lie_derivative_tensor(h0, alpha, z).norm() < 1e-10);
}

TEST_CASE("Lie derivative of dx dx along free streaming") {
  // L_X (dx1 dx1) = d(v1) dx1 + dx1 d(v1) for X = (v, 0).
  const ScalarField h0("H0", 1, [](const PhasePoint& z) { return 0.5 * z[1] * z[1]; });
  const SymmetricTensorField alpha("dx dx", 1, [](const PhasePoint&) -> StateMatrix {
    StateMatrix m = StateMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
  });
  StateVector s(2);
  s << 0.4, 0.9;
  const StateMatrix lie = lie_derivative_tensor(h0, alpha, PhasePoint::from_state(s));
  CHECK(lie(0, 0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lie(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(lie(1, 1) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(check_dimension(4), DimensionError);
  CHECK_THROWS_AS(check_dimension(0), DimensionError);
  const ScalarField f("f", 2, [](const PhasePoint& z) { return z[0]; });
  CHECK_THROWS_AS(f(PhasePoint::origin(3)), DimensionError);
}
