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

#include "shk/phase/phase_point.hpp"

#include <functional>
#include <memory>
#include <string>

namespace shk {

// Smooth function on phase space. The gradient is analytic when supplied,
// otherwise a central difference with step cbrt(eps) * max(1, |z_i|).
class ScalarField {
 public:
  using ValueFn = std::function<double(const PhasePoint&)>;
  using GradientFn = std::function<StateVector(const PhasePoint&)>;

  ScalarField(std::string name, int dim, ValueFn value, GradientFn gradient = {});

  double operator()(const PhasePoint& z) const;
  StateVector gradient(const PhasePoint& z) const;
  StateVector finite_difference_gradient(const PhasePoint& z) const;

  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  ScalarField scaled(double c) const;
  ScalarField renamed(std::string name) const;

  static ScalarField zero(int dim);
  static ScalarField constant(int dim, double c);

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);

 private:
  void check(const PhasePoint& z) const;

  std::string name_;
  int dim_;
  ValueFn value_;
  GradientFn gradient_;
};

// Symmetric 2-tensor on phase space (covariant or contravariant depending on
// the caller). eval() enforces symmetry to 1e-12.
class SymmetricTensorField {
 public:
  using EvalFn = std::function<StateMatrix(const PhasePoint&)>;

  SymmetricTensorField(std::string name, int dim, EvalFn eval);

  StateMatrix operator()(const PhasePoint& z) const;
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  int dim_;
  EvalFn eval_;
};

}  // namespace shk
