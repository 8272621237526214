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

#include "shk/coarse/covariance_kernel.hpp"

#include "shk/parallel.hpp"
#include "shk/phase/poisson.hpp"

#include <cmath>

namespace shk::coarse {

struct CovarianceKernel::Impl {
  std::string name;
  int dim = 0;
  Eval analytic;  // empty for Monte-Carlo kernels

  // Monte-Carlo state.
  std::vector<TimeDependentField> draws;
  double tau = 0.0;
  QuadratureSpec quad;
  FlowMap flow;
  std::vector<PhasePoint> points;
  Eigen::MatrixXd jumps;  // draws x (points * 2n): X_s1 of each draw at each point
  std::vector<std::string> warnings;

  StateVector jump(std::size_t draw, const PhasePoint& z) const {
    return hamiltonian_vector_field(s1_field(draws[draw], tau, quad, flow), z);
  }
};

CovarianceKernel CovarianceKernel::analytic(std::string name, int dim, Eval alpha) {
  check_dimension(dim);
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->dim = dim;
  impl->analytic = std::move(alpha);
  return CovarianceKernel(std::move(impl));
}

int CovarianceKernel::dim() const { return impl_->dim; }
const std::string& CovarianceKernel::name() const { return impl_->name; }
bool CovarianceKernel::is_monte_carlo() const { return !impl_->analytic; }
int CovarianceKernel::samples() const { return static_cast<int>(impl_->draws.size()); }
const std::vector<PhasePoint>& CovarianceKernel::points() const { return impl_->points; }
const std::vector<std::string>& CovarianceKernel::warnings() const { return impl_->warnings; }

StateMatrix CovarianceKernel::operator()(const PhasePoint& z1, const PhasePoint& z2) const {
  const int m = 2 * impl_->dim;
  if (z1.dim() != impl_->dim || z2.dim() != impl_->dim) {
    throw DimensionError("kernel '" + impl_->name + "' evaluated at a point of wrong dimension");
  }
  if (impl_->analytic) return impl_->analytic(z1, z2);
  StateMatrix sum = StateMatrix::Zero(m, m);
  for (std::size_t s = 0; s < impl_->draws.size(); ++s) {
    sum += impl_->jump(s, z1) * impl_->jump(s, z2).transpose();
  }
  return sum / static_cast<double>(impl_->draws.size());
}

StateMatrix CovarianceKernel::lowered(const PhasePoint& z1, const PhasePoint& z2) const {
  const StateMatrix omega = symplectic_matrix(impl_->dim);
  return omega.transpose() * (*this)(z1, z2) * omega;
}

StateMatrix CovarianceKernel::at_points(std::size_t i, std::size_t j) const {
  if (!is_monte_carlo()) throw Error("analytic kernel has no cached points");
  const int m = 2 * impl_->dim;
  const auto& J = impl_->jumps;
  return (J.middleCols(i * m, m).transpose() * J.middleCols(j * m, m)) /
         static_cast<double>(J.rows());
}

StateMatrix CovarianceKernel::standard_error(std::size_t i, std::size_t j) const {
  if (!is_monte_carlo()) throw Error("analytic kernel has no standard errors");
  const int m = 2 * impl_->dim;
  const auto& J = impl_->jumps;
  const double n = static_cast<double>(J.rows());
  StateMatrix err(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Eigen::ArrayXd prod =
          J.col(i * m + a).array() * J.col(j * m + b).array();
      const double mean = prod.mean();
      const double var = n > 1 ? (prod - mean).square().sum() / (n - 1.0) : 0.0;
      err(a, b) = std::sqrt(var / n);
    }
  }
  return err;
}

CovarianceKernel estimate_covariance_kernel(const PerturbationEnsemble& ensemble,
                                            const std::vector<PhasePoint>& points,
                                            int samples, std::uint64_t seed, int workers) {
  ensemble.validate();
  if (samples < 2) throw DomainError("need at least two samples for a covariance estimate");
  if (points.empty()) throw DomainError("no points to estimate the kernel at");
  for (const auto& p : points) {
    if (p.dim() != ensemble.dim) throw DimensionError("kernel point has the wrong dimension");
  }
  auto impl = std::make_shared<CovarianceKernel::Impl>();
  impl->name = ensemble.name;
  impl->dim = ensemble.dim;
  impl->tau = ensemble.tau;
  impl->quad = QuadratureSpec::for_correlation_time(ensemble.tau, ensemble.correlation_time);
  impl->flow = ensemble.flow;
  impl->points = points;
  impl->draws.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    impl->draws.push_back(ensemble.sample(seed, static_cast<std::uint64_t>(s)));
  }
  const int m = 2 * ensemble.dim;
  impl->jumps.resize(samples, static_cast<Eigen::Index>(points.size()) * m);
  parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t s) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      impl->jumps.block(s, i * m, 1, m) = impl->jump(s, points[i]).transpose();
    }
  });
  const double spread = (impl->jumps.rowwise() - impl->jumps.row(0)).cwiseAbs().maxCoeff();
  if (spread == 0.0) {
    impl->warnings.push_back("ensemble '" + ensemble.name +
                             "' is degenerate: every draw gives the same kick");
  }
  return CovarianceKernel(std::move(impl));
}

}  // namespace shk::coarse
