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

#include "shk/phase/scalar_field.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace shk {

ScalarField::ScalarField(std::string name, int dim, ValueFn value, GradientFn gradient)
    : name_(std::move(name)), dim_(dim), value_(std::move(value)),
      gradient_(std::move(gradient)) {
  check_dimension(dim_);
  if (!value_) throw Error("scalar field '" + name_ + "' has no value function");
}

void ScalarField::check(const PhasePoint& z) const {
  if (z.dim() != dim_) {
    throw DimensionError("field '" + name_ + "' has dimension " + std::to_string(dim_) +
                         ", point has " + std::to_string(z.dim()));
  }
}

double ScalarField::operator()(const PhasePoint& z) const {
  check(z);
  return value_(z);
}

StateVector ScalarField::finite_difference_gradient(const PhasePoint& z) const {
  check(z);
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  StateVector g(2 * dim_);
  StateVector zp = z.state();
  for (int i = 0; i < 2 * dim_; ++i) {
    const double zi = zp[i];
    const double h = base * std::max(1.0, std::abs(zi));
    zp[i] = zi + h;
    const double fp = value_(PhasePoint::from_state(zp));
    zp[i] = zi - h;
    const double fm = value_(PhasePoint::from_state(zp));
    zp[i] = zi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

StateVector ScalarField::gradient(const PhasePoint& z) const {
  check(z);
  StateVector g = gradient_ ? gradient_(z) : finite_difference_gradient(z);
  if (g.size() != 2 * dim_) {
    throw DimensionError("gradient of '" + name_ + "' has the wrong length");
  }
  return g;
}

ScalarField ScalarField::scaled(double c) const {
  auto value = value_;
  GradientFn grad;
  if (gradient_) {
    auto g = gradient_;
    grad = [g, c](const PhasePoint& z) -> StateVector { return c * g(z); };
  }
  return ScalarField(name_, dim_,
                     [value, c](const PhasePoint& z) { return c * value(z); }, grad);
}

ScalarField ScalarField::renamed(std::string name) const {
  ScalarField out = *this;
  out.name_ = std::move(name);
  return out;
}

ScalarField ScalarField::zero(int dim) { return constant(dim, 0.0); }

ScalarField ScalarField::constant(int dim, double c) {
  return ScalarField(
      "const", dim, [c](const PhasePoint&) { return c; },
      [dim](const PhasePoint&) -> StateVector { return StateVector::Zero(2 * dim); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.dim_ != b.dim_) throw DimensionError("sum of fields of different dimension");
  auto fa = a.value_, fb = b.value_;
  ScalarField::GradientFn grad;
  if (a.gradient_ && b.gradient_) {
    auto ga = a.gradient_, gb = b.gradient_;
    grad = [ga, gb](const PhasePoint& z) -> StateVector { return ga(z) + gb(z); };
  }
  return ScalarField(
      a.name_ + "+" + b.name_, a.dim_,
      [fa, fb](const PhasePoint& z) { return fa(z) + fb(z); }, grad);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (a.dim_ != b.dim_) throw DimensionError("product of fields of different dimension");
  auto fa = a.value_, fb = b.value_;
  ScalarField::GradientFn grad;
  if (a.gradient_ && b.gradient_) {
    auto ga = a.gradient_, gb = b.gradient_;
    grad = [fa, fb, ga, gb](const PhasePoint& z) -> StateVector {
      return fa(z) * gb(z) + fb(z) * ga(z);
    };
  }
  return ScalarField(
      a.name_ + "*" + b.name_, a.dim_,
      [fa, fb](const PhasePoint& z) { return fa(z) * fb(z); }, grad);
}

SymmetricTensorField::SymmetricTensorField(std::string name, int dim, EvalFn eval)
    : name_(std::move(name)), dim_(dim), eval_(std::move(eval)) {
  check_dimension(dim_);
}

StateMatrix SymmetricTensorField::operator()(const PhasePoint& z) const {
  if (z.dim() != dim_) throw DimensionError("tensor field '" + name_ + "' dimension mismatch");
  StateMatrix m = eval_(z);
  if (m.rows() != 2 * dim_ || m.cols() != 2 * dim_) {
    throw DimensionError("tensor field '" + name_ + "' returned the wrong shape");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NumericalError("tensor field '" + name_ + "' is not symmetric");
  }
  return m;
}

}  // namespace shk
