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

#include "shk/coarse/kl_decompose.hpp"

#include "shk/phase/poisson.hpp"
#include "shk/quad/gauss_legendre.hpp"
#include "shk/random/philox.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shk::coarse {

struct NoiseBasis::Impl {
  explicit Impl(CovarianceKernel k) : kernel(std::move(k)) {}

  CovarianceKernel kernel;
  std::vector<PhasePoint> grid;
  Eigen::MatrixXd coefficients;  // (grid * 2n) x rank
  Eigen::MatrixXd gram;          // lowered Gram matrix over the grid
  std::vector<double> eigenvalues;
  double captured = 0.0;
  PhasePoint anchor;
  double loop_residue = 0.0;

  int dim() const { return kernel.dim(); }

  // Rows of the lowered kernel between z and every grid point.
  Eigen::MatrixXd cross(const PhasePoint& z) const {
    const int m = 2 * dim();
    Eigen::MatrixXd row(m, grid.size() * m);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      row.middleCols(j * m, m) = kernel.lowered(z, grid[j]);
    }
    return row;
  }

  Eigen::MatrixXd differentials(const PhasePoint& z) const { return cross(z) * coefficients; }

  // Integral of dH_k along the straight segment a -> b, all k at once.
  Eigen::VectorXd segment_integral(const PhasePoint& a, const PhasePoint& b) const {
    const StateVector delta = b.state() - a.state();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(coefficients.cols());
    const auto& rule = quad::gauss_legendre(16);
    for (int panel = 0; panel < 2; ++panel) {
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = 0.25 * (2 * panel + 1 + rule.nodes[i]);
        const PhasePoint p = PhasePoint::from_state(a.state() + s * delta);
        const Eigen::VectorXd d = delta;
        sum += 0.25 * rule.weights[i] * (differentials(p).transpose() * d);
      }
    }
    return sum;
  }
};

int NoiseBasis::dim() const { return impl_->dim(); }
int NoiseBasis::rank() const { return static_cast<int>(impl_->coefficients.cols()); }
double NoiseBasis::captured_fraction() const { return impl_->captured; }
const std::vector<double>& NoiseBasis::eigenvalues() const { return impl_->eigenvalues; }
const std::vector<ScalarField>& NoiseBasis::modes() const { return modes_; }
const PhasePoint& NoiseBasis::anchor() const { return impl_->anchor; }
double NoiseBasis::loop_residue() const { return impl_->loop_residue; }

Eigen::MatrixXd NoiseBasis::differentials(const PhasePoint& z) const {
  return impl_->differentials(z);
}

StateMatrix NoiseBasis::reconstructed_diagonal(const PhasePoint& z) const {
  const Eigen::MatrixXd d = impl_->differentials(z);
  const StateMatrix beta = d * d.transpose();
  return raise_tensor(beta);
}

Eigen::MatrixXd NoiseBasis::rkhs_gram() const {
  return impl_->coefficients.transpose() * impl_->gram * impl_->coefficients;
}

NoiseBasis kl_decompose(const CovarianceKernel& kernel, const std::vector<PhasePoint>& grid,
                        const KlOptions& options) {
  if (grid.empty()) throw DomainError("KL grid is empty");
  if (!(options.trace_fraction > 0.0 && options.trace_fraction <= 1.0)) {
    throw DomainError("trace fraction must lie in (0, 1]");
  }
  if (options.anchor >= grid.size()) throw DomainError("anchor index outside the grid");
  const int n = kernel.dim();
  const int m = 2 * n;
  for (const auto& p : grid) {
    if (p.dim() != n) throw DimensionError("grid point dimension differs from the kernel's");
  }

  auto impl = std::make_shared<NoiseBasis::Impl>(kernel);
  impl->grid = grid;
  impl->anchor = grid[options.anchor];

  const Eigen::Index size = static_cast<Eigen::Index>(grid.size()) * m;
  Eigen::MatrixXd gram(size, size);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const StateMatrix block = kernel.lowered(grid[i], grid[j]);
      gram.block(i * m, j * m, m, m) = block;
      gram.block(j * m, i * m, m, m) = block.transpose();
    }
  }
  gram = 0.5 * (gram + gram.transpose()).eval();
  impl->gram = gram;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const double trace = gram.trace();
  if (!(trace >= 0.0) || !std::isfinite(trace)) {
    throw NumericalError("kernel Gram matrix has a negative or non-finite trace");
  }
  if (values[0] < -1e-8 * trace) {
    throw NumericalError("covariance kernel is not positive semi-definite (eigenvalue " +
                         std::to_string(values[0]) + ")");
  }
  for (Eigen::Index i = size; i-- > 0;) impl->eigenvalues.push_back(values[i]);

  int rank = 0;
  double captured = 0.0;
  if (trace > 0.0) {
    while (rank < size && captured < options.trace_fraction * trace) {
      const double lambda = impl->eigenvalues[rank];
      if (lambda <= 1e-12 * trace) break;
      captured += lambda;
      ++rank;
    }
    impl->captured = captured / trace;
  }
  impl->coefficients.resize(size, rank);
  for (int k = 0; k < rank; ++k) {
    const Eigen::Index col = size - 1 - k;
    impl->coefficients.col(k) = solver.eigenvectors().col(col) / std::sqrt(values[col]);
  }

  // Sign gauge: the largest component of dH_k at the anchor is positive.
  if (rank > 0) {
    const Eigen::MatrixXd d = impl->differentials(impl->anchor);
    for (int k = 0; k < rank; ++k) {
      Eigen::Index idx = 0;
      d.col(k).cwiseAbs().maxCoeff(&idx);
      if (d(idx, k) < 0.0) impl->coefficients.col(k) *= -1.0;
    }
  }

  // Closed loops through the anchor; dH_k must be exact.
  if (rank > 0 && grid.size() >= 3) {
    double worst = 0.0;
    const std::size_t g = grid.size();
    for (int t = 0; t < options.loop_checks; ++t) {
      const std::size_t i = (options.anchor + 1 + 2 * t) % g;
      const std::size_t j = (options.anchor + 2 + 3 * t) % g;
      if (i == j || i == options.anchor || j == options.anchor) continue;
      const PhasePoint& a = impl->anchor;
      const Eigen::VectorXd loop = impl->segment_integral(a, grid[i]) +
                                   impl->segment_integral(grid[i], grid[j]) +
                                   impl->segment_integral(grid[j], a);
      const double perimeter = (grid[i].state() - a.state()).norm() +
                               (grid[j].state() - grid[i].state()).norm() +
                               (a.state() - grid[j].state()).norm();
      for (int k = 0; k < rank; ++k) {
        const double scale = std::sqrt(impl->eigenvalues[k] / static_cast<double>(g)) * perimeter;
        if (scale > 0.0) worst = std::max(worst, std::abs(loop[k]) / scale);
      }
    }
    impl->loop_residue = worst;
    if (worst > options.loop_tolerance) {
      throw NumericalError("noise modes are not exact differentials (loop residue " +
                           std::to_string(worst) + ")");
    }
  }

  NoiseBasis basis;
  basis.impl_ = impl;
  for (int k = 0; k < rank; ++k) {
    std::shared_ptr<const NoiseBasis::Impl> shared = impl;
    basis.modes_.emplace_back(
        "H" + std::to_string(k + 1), n,
        [shared, k](const PhasePoint& z) {
          return shared->segment_integral(shared->anchor, z)[k];
        },
        [shared, k](const PhasePoint& z) -> StateVector {
          return shared->differentials(z).col(k);
        });
  }
  return basis;
}

std::vector<PhasePoint> latin_hypercube(const StateVector& lo, const StateVector& hi,
                                        std::size_t count, std::uint64_t seed) {
  if (lo.size() != hi.size()) throw DimensionError("box corners differ in length");
  const auto m = lo.size();
  random::Sampler sampler(seed, 0x4c48ull);
  std::vector<StateVector> pts(count, StateVector(m));
  std::vector<std::size_t> perm(count);
  for (Eigen::Index a = 0; a < m; ++a) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = count; i > 1; --i) {
      const auto j = static_cast<std::size_t>(sampler.uniform() * static_cast<double>(i));
      std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double u = (static_cast<double>(perm[i]) + sampler.uniform()) / static_cast<double>(count);
      pts[i][a] = lo[a] + u * (hi[a] - lo[a]);
    }
  }
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (const auto& p : pts) out.push_back(PhasePoint::from_state(p));
  return out;
}

}  // namespace shk::coarse
