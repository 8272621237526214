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

#include "shk/langevin/statistics.hpp"

#include <cmath>

namespace shk::langevin {

namespace {

struct Summary {
  double mean = 0, mean_err = 0, var = 0, var_err = 0;
};

// Sample mean and variance with their standard errors; the error of the
// variance uses the sample fourth central moment.
Summary summarize(const Eigen::ArrayXd& x) {
  Summary s;
  const double n = static_cast<double>(x.size());
  s.mean = x.mean();
  if (x.size() < 2) return s;
  const Eigen::ArrayXd c = x - s.mean;
  const double m2 = c.square().sum() / n;
  const double m4 = c.square().square().sum() / n;
  s.var = m2 * n / (n - 1.0);
  s.mean_err = std::sqrt(s.var / n);
  s.var_err = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return s;
}

}  // namespace

std::vector<Observable> coordinate_observables(int dim) {
  std::vector<Observable> obs;
  for (int i = 0; i < 2 * dim; ++i) {
    const std::string name = (i < dim ? "x" : "v") + std::to_string(i % dim + 1);
    obs.push_back({name, [i](const PhasePoint& z) { return z[i]; }});
  }
  return obs;
}

MomentSeries estimate_statistics(const EnsembleTrajectories& traj,
                                 const std::vector<Observable>& observables,
                                 const std::vector<PairObservable>& pair_observables) {
  const std::size_t records = traj.records();
  const std::size_t p = traj.particles;
  const std::size_t pairs = p / 2;
  const bool paired = pairs > 0 && traj.mode != NoiseMode::independent;
  const auto nobs = static_cast<Eigen::Index>(observables.size());
  const auto npair = static_cast<Eigen::Index>(pair_observables.size());
  if (npair > 0 && pairs == 0) throw DomainError("pair observables need at least two particles");

  MomentSeries out;
  out.times = traj.times;
  out.samples = p;
  for (const auto& o : observables) out.names.push_back(o.name);
  for (const auto& o : pair_observables) out.pair_names.push_back(o.name);
  const auto r = static_cast<Eigen::Index>(records);
  out.mean.resize(r, nobs);
  out.mean_stderr.resize(r, nobs);
  out.variance.resize(r, nobs);
  out.variance_stderr.resize(r, nobs);
  out.pair_covariance = Eigen::MatrixXd::Zero(r, nobs);
  out.pair_covariance_stderr = Eigen::MatrixXd::Zero(r, nobs);
  out.pair_mean.resize(r, npair);
  out.pair_mean_stderr.resize(r, npair);
  out.pair_variance.resize(r, npair);
  out.pair_variance_stderr.resize(r, npair);

  Eigen::ArrayXd values(static_cast<Eigen::Index>(p));
  Eigen::ArrayXd pair_values(static_cast<Eigen::Index>(pairs));
  for (std::size_t t = 0; t < records; ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    for (Eigen::Index o = 0; o < nobs; ++o) {
      for (std::size_t i = 0; i < p; ++i) {
        values[static_cast<Eigen::Index>(i)] = observables[o].value(traj.at(t, i));
      }
      const Summary s = summarize(values);
      out.mean(row, o) = s.mean;
      out.mean_stderr(row, o) = s.mean_err;
      out.variance(row, o) = s.var;
      out.variance_stderr(row, o) = s.var_err;
      if (paired) {
        Eigen::ArrayXd a(static_cast<Eigen::Index>(pairs)), b(static_cast<Eigen::Index>(pairs));
        for (std::size_t j = 0; j < pairs; ++j) {
          a[static_cast<Eigen::Index>(j)] = values[static_cast<Eigen::Index>(2 * j)];
          b[static_cast<Eigen::Index>(j)] = values[static_cast<Eigen::Index>(2 * j + 1)];
        }
        const Eigen::ArrayXd prod = (a - a.mean()) * (b - b.mean());
        const Summary s2 = summarize(prod);
        const double n = static_cast<double>(pairs);
        out.pair_covariance(row, o) = n > 1 ? s2.mean * n / (n - 1.0) : 0.0;
        out.pair_covariance_stderr(row, o) = s2.mean_err;
      }
    }
    for (Eigen::Index o = 0; o < npair; ++o) {
      for (std::size_t j = 0; j < pairs; ++j) {
        pair_values[static_cast<Eigen::Index>(j)] =
            pair_observables[o].value(traj.at(t, 2 * j), traj.at(t, 2 * j + 1));
      }
      const Summary s = summarize(pair_values);
      out.pair_mean(row, o) = s.mean;
      out.pair_mean_stderr(row, o) = s.mean_err;
      out.pair_variance(row, o) = s.var;
      out.pair_variance_stderr(row, o) = s.var_err;
    }
  }
  return out;
}

}  // namespace shk::langevin
