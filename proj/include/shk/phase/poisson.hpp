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

#include "shk/phase/scalar_field.hpp"

namespace shk {

// Omega = [[0, I], [-I, 0]], so that X_h = Omega * grad h.
StateMatrix symplectic_matrix(int n);

// {f, g} = sum_i (df/dx_i dg/dv_i - df/dv_i dg/dx_i).
double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& z);

// {f, g} as a field in its own right; its gradient is a finite difference.
ScalarField poisson_bracket_field(const ScalarField& f, const ScalarField& g);

StateVector hamiltonian_vector_field(const ScalarField& h, const PhasePoint& z);
StateVector hamiltonian_vector_field(const StateVector& gradient);

// The covector paired with a vector X by the symplectic form (dh from X_h).
StateVector lower_vector(const StateVector& x);

// Omega * D * Omega^T: turns a contravariant 2-tensor into the covariant one
// that pairs with differentials, e.g. X_h (x) X_h -> dh (x) dh.
StateMatrix lower_tensor(const StateMatrix& contravariant);
StateMatrix raise_tensor(const StateMatrix& covariant);

// (x, v) -> (x + v t, v).
PhasePoint free_streaming_flow(const PhasePoint& z, double t);
StateMatrix free_streaming_jacobian(int n, double t);

PhasePoint rk4_step(const VectorFieldFn& field, const PhasePoint& z, double dt);

// Lie derivative of a covariant symmetric tensor along X_h, by transporting
// the tensor with the time +-step flow of X_h (one RK4 step each) and taking
// the central difference.
StateMatrix lie_derivative_tensor(const ScalarField& h, const SymmetricTensorField& alpha,
                                  const PhasePoint& z, double step = 1e-3);

}  // namespace shk
