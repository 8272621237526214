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

#include <cmath>
#include <limits>

namespace shk {

StateMatrix symplectic_matrix(int n) {
  check_dimension(n);
  StateMatrix omega = StateMatrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return omega;
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& z) {
  if (f.dim() != g.dim() || f.dim() != z.dim()) {
    throw DimensionError("poisson bracket operands have different dimensions");
  }
  const int n = z.dim();
  const StateVector df = f.gradient(z);
  const StateVector dg = g.gradient(z);
  return df.head(n).dot(dg.tail(n)) - df.tail(n).dot(dg.head(n));
}

ScalarField poisson_bracket_field(const ScalarField& f, const ScalarField& g) {
  if (f.dim() != g.dim()) throw DimensionError("poisson bracket operands differ in dimension");
  return ScalarField("{" + f.name() + "," + g.name() + "}", f.dim(),
                     [f, g](const PhasePoint& z) { return poisson_bracket(f, g, z); });
}

StateVector hamiltonian_vector_field(const StateVector& gradient) {
  const auto n = gradient.size() / 2;
  StateVector x(gradient.size());
  x.head(n) = gradient.tail(n);
  x.tail(n) = -gradient.head(n);
  for (int i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw NumericalError("non-finite gradient");
  }
  return x;
}

StateVector hamiltonian_vector_field(const ScalarField& h, const PhasePoint& z) {
  if (h.dim() != z.dim()) throw DimensionError("hamiltonian and point differ in dimension");
  return hamiltonian_vector_field(h.gradient(z));
}

StateVector lower_vector(const StateVector& x) {
  const auto n = x.size() / 2;
  StateVector d(x.size());
  d.head(n) = -x.tail(n);
  d.tail(n) = x.head(n);
  return d;
}

StateMatrix lower_tensor(const StateMatrix& contravariant) {
  const StateMatrix omega = symplectic_matrix(static_cast<int>(contravariant.rows() / 2));
  return omega.transpose() * contravariant * omega;
}

StateMatrix raise_tensor(const StateMatrix& covariant) {
  const StateMatrix omega = symplectic_matrix(static_cast<int>(covariant.rows() / 2));
  return omega * covariant * omega.transpose();
}

PhasePoint free_streaming_flow(const PhasePoint& z, double t) {
  StateVector s = z.state();
  const int n = z.dim();
  s.head(n) += t * s.tail(n);
  return PhasePoint::from_state(s);
}

StateMatrix free_streaming_jacobian(int n, double t) {
  StateMatrix j = StateMatrix::Identity(2 * n, 2 * n);
  j.topRightCorner(n, n) = t * Eigen::MatrixXd::Identity(n, n);
  return j;
}

PhasePoint rk4_step(const VectorFieldFn& field, const PhasePoint& z, double dt) {
  const StateVector& s = z.state();
  const StateVector k1 = field(z);
  const StateVector k2 = field(PhasePoint::from_state(s + 0.5 * dt * k1));
  const StateVector k3 = field(PhasePoint::from_state(s + 0.5 * dt * k2));
  const StateVector k4 = field(PhasePoint::from_state(s + dt * k3));
  return PhasePoint::from_state(s + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

namespace {

// Pull-back of alpha by the time-t flow, Phi_t^* alpha at z.
StateMatrix pull_back(const VectorFieldFn& field, const SymmetricTensorField& alpha,
                      const PhasePoint& z, double t) {
  const int m = 2 * z.dim();
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  StateMatrix jac(m, m);
  StateVector s = z.state();
  for (int i = 0; i < m; ++i) {
    const double si = s[i];
    const double h = base * std::max(1.0, std::abs(si));
    s[i] = si + h;
    const StateVector fp = rk4_step(field, PhasePoint::from_state(s), t).state();
    s[i] = si - h;
    const StateVector fm = rk4_step(field, PhasePoint::from_state(s), t).state();
    s[i] = si;
    jac.col(i) = (fp - fm) / (2.0 * h);
  }
  const PhasePoint image = rk4_step(field, z, t);
  return jac.transpose() * alpha(image) * jac;
}

}  // namespace

StateMatrix lie_derivative_tensor(const ScalarField& h, const SymmetricTensorField& alpha,
                                  const PhasePoint& z, double step) {
  if (h.dim() != z.dim() || alpha.dim() != z.dim()) {
    throw DimensionError("lie derivative operands differ in dimension");
  }
  if (!(step > 0.0)) throw DomainError("lie derivative step must be positive");
  const VectorFieldFn field = [&h](const PhasePoint& p) {
    return hamiltonian_vector_field(h, p);
  };
  const StateMatrix forward = pull_back(field, alpha, z, step);
  const StateMatrix backward = pull_back(field, alpha, z, -step);
  StateMatrix lie = (forward - backward) / (2.0 * step);
  return 0.5 * (lie + lie.transpose());
}

}  // namespace shk
