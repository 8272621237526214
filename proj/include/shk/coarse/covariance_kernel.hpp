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

#include "shk/coarse/kick.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace shk::coarse {

// Two-point covariance alpha(z1, z2) = E[X_s1(z1) (x) X_s1(z2)], either in
// closed form or estimated from samples of a perturbation ensemble.
class CovarianceKernel {
 public:
  using Eval = std::function<StateMatrix(const PhasePoint&, const PhasePoint&)>;

  static CovarianceKernel analytic(std::string name, int dim, Eval alpha);

  int dim() const;
  const std::string& name() const;

  // Contravariant kernel alpha.
  StateMatrix operator()(const PhasePoint& z1, const PhasePoint& z2) const;
  // Covariant form E[ds1(z1) ds1(z2)^T].
  StateMatrix lowered(const PhasePoint& z1, const PhasePoint& z2) const;

  bool is_monte_carlo() const;
  int samples() const;
  // Construction points of a Monte-Carlo kernel, with cached estimates.
  const std::vector<PhasePoint>& points() const;
  StateMatrix at_points(std::size_t i, std::size_t j) const;
  StateMatrix standard_error(std::size_t i, std::size_t j) const;
  const std::vector<std::string>& warnings() const;

  struct Impl;

 private:
  explicit CovarianceKernel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend CovarianceKernel estimate_covariance_kernel(const PerturbationEnsemble&,
                                                     const std::vector<PhasePoint>&, int,
                                                     std::uint64_t, int);

  std::shared_ptr<const Impl> impl_;
};

// Monte-Carlo estimate of alpha from `samples` independent draws. X_s1 is
// cached at the given points; other points are evaluated on demand from the
// stored draws. Reports per-entry standard errors.
CovarianceKernel estimate_covariance_kernel(const PerturbationEnsemble& ensemble,
                                            const std::vector<PhasePoint>& points,
                                            int samples, std::uint64_t seed,
                                            int workers = 1);

}  // namespace shk::coarse
