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

#include "shk/coarse/covariance_kernel.hpp"
#include "shk/coarse/langevin_model.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace shk::coarse {

struct KlOptions {
  double trace_fraction = 0.99;
  // Index into the grid of the point where every mode vanishes.
  std::size_t anchor = 0;
  // Triangles (anchor, grid[i], grid[j]) used for the closed-loop check.
  int loop_checks = 8;
  double loop_tolerance = 1e-6;
};

// Orthonormal Hamiltonian noise basis of a covariance kernel, truncated to
// the leading modes.
class NoiseBasis {
 public:
  int dim() const;
  int rank() const;
  double captured_fraction() const;
  // Eigenvalues of the lowered Gram matrix, descending.
  const std::vector<double>& eigenvalues() const;
  const std::vector<ScalarField>& modes() const;
  const PhasePoint& anchor() const;

  // Columns dH_k(z), k < rank.
  Eigen::MatrixXd differentials(const PhasePoint& z) const;
  // Sum_k X_k(z) X_k(z)^T, to compare with alpha(z, z).
  StateMatrix reconstructed_diagonal(const PhasePoint& z) const;
  // <H_k, H_l> in the kernel's reproducing inner product; identity when the
  // basis is orthonormal.
  Eigen::MatrixXd rkhs_gram() const;
  // Largest relative circulation of dH_k around the checked triangles.
  double loop_residue() const;

  struct Impl;

 private:
  friend NoiseBasis kl_decompose(const CovarianceKernel&, const std::vector<PhasePoint>&,
                                 const KlOptions&);
  std::shared_ptr<const Impl> impl_;
  std::vector<ScalarField> modes_;
};

NoiseBasis kl_decompose(const CovarianceKernel& kernel, const std::vector<PhasePoint>& grid,
                        const KlOptions& options = {});

// Latin-hypercube sample of the box [lo, hi] in (x, v) coordinates.
std::vector<PhasePoint> latin_hypercube(const StateVector& lo, const StateVector& hi,
                                        std::size_t count, std::uint64_t seed);

// Drift H0 + (eps^2 / tau) E[s2], noise (eps / sqrt(tau)) H_k.
LangevinModel assemble_langevin(const ScalarField& h0, const std::optional<ScalarField>& mean_s2,
                                const NoiseBasis& basis, double epsilon, double tau);

}  // namespace shk::coarse
