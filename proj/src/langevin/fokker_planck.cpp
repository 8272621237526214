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

#include "shk/langevin/fokker_planck.hpp"

#include <cmath>
#include <limits>

namespace shk::langevin {

namespace {

StateMatrix jacobian(const VectorFieldFn& f, const PhasePoint& z) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  const int m = 2 * z.dim();
  StateMatrix j(m, m);
  StateVector s = z.state();
  for (int i = 0; i < m; ++i) {
    const double si = s[i];
    const double h = base * std::max(1.0, std::abs(si));
    s[i] = si + h;
    const StateVector fp = f(PhasePoint::from_state(s));
    s[i] = si - h;
    const StateVector fm = f(PhasePoint::from_state(s));
    s[i] = si;
    j.col(i) = (fp - fm) / (2.0 * h);
  }
  return j;
}

struct AffineFit {
  StateVector offset;
  StateMatrix slope;
};

// B(z) = B0 + sum_i z_i B1_i + (1/2) sum_ij z_i z_j B2_ij.
struct QuadraticFit {
  StateMatrix constant;
  std::vector<StateMatrix> linear;
  std::vector<std::vector<StateMatrix>> quadratic;

  StateMatrix operator()(const StateVector& z) const {
    StateMatrix b = constant;
    const auto m = z.size();
    for (Eigen::Index i = 0; i < m; ++i) {
      b += z[i] * linear[i];
      for (Eigen::Index j = 0; j < m; ++j) b += 0.5 * z[i] * z[j] * quadratic[i][j];
    }
    return b;
  }
};

PhasePoint at(const StateVector& s) { return PhasePoint::from_state(s); }

}  // namespace

StateVector ito_drift(const LangevinModel& model, const PhasePoint& z) {
  StateVector mu = model.drift(z);
  for (const auto& field : model.noise) {
    mu += 0.5 * jacobian(field, z) * field(z);
  }
  return mu;
}

StateMatrix noise_matrix(const LangevinModel& model, const PhasePoint& z) {
  const int m = 2 * z.dim();
  StateMatrix b = StateMatrix::Zero(m, m);
  for (const auto& field : model.noise) {
    const StateVector x = field(z);
    b += x * x.transpose();
  }
  return b;
}

MomentPrediction fp_moment_prediction(const LangevinModel& model, const StateVector& mean0,
                                      const StateMatrix& covariance0, double duration,
                                      int records, bool allow_non_affine) {
  model.validate();
  const int m = 2 * model.dim;
  if (mean0.size() != m || covariance0.rows() != m || covariance0.cols() != m) {
    throw DimensionError("initial moments have the wrong size");
  }
  if (!(duration > 0.0) || records < 2) throw DomainError("need duration > 0 and records >= 2");

  // Differences are taken around the initial mean so that models defined
  // on part of phase space can still be probed, then moved to the origin.
  const StateVector& c = mean0;
  auto unit = [m](int i) {
    StateVector e = StateVector::Zero(m);
    e[i] = 1.0;
    return e;
  };

  // Unit-step differences are exact for affine drift and quadratic noise.
  AffineFit drift{ito_drift(model, at(c)), StateMatrix(m, m)};
  for (int i = 0; i < m; ++i) {
    drift.slope.col(i) =
        0.5 * (ito_drift(model, at(c + unit(i))) - ito_drift(model, at(c - unit(i))));
  }
  drift.offset -= drift.slope * c;
  QuadraticFit noise;
  noise.constant = noise_matrix(model, at(c));
  noise.linear.resize(m);
  noise.quadratic.assign(m, std::vector<StateMatrix>(m));
  for (int i = 0; i < m; ++i) {
    const StateMatrix plus = noise_matrix(model, at(c + unit(i)));
    const StateMatrix minus = noise_matrix(model, at(c - unit(i)));
    noise.linear[i] = 0.5 * (plus - minus);
    noise.quadratic[i][i] = plus + minus - 2.0 * noise.constant;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      noise.quadratic[i][j] = 0.25 * (noise_matrix(model, at(c + unit(i) + unit(j))) -
                                      noise_matrix(model, at(c + unit(i) - unit(j))) -
                                      noise_matrix(model, at(c + unit(j) - unit(i))) +
                                      noise_matrix(model, at(c - unit(i) - unit(j))));
    }
  }
  for (int i = 0; i < m; ++i) {
    noise.constant -= c[i] * noise.linear[i];
    for (int j = 0; j < m; ++j) {
      noise.constant += 0.5 * c[i] * c[j] * noise.quadratic[i][j];
      noise.linear[i] -= c[j] * noise.quadratic[i][j];
    }
  }

  if (!allow_non_affine) {
    // Probe points spread around the initial mean.
    const StateVector probes[] = {
        mean0 + StateVector::Constant(m, 0.7),
        mean0 - StateVector::LinSpaced(m, 0.3, 1.1),
        mean0 + StateVector::LinSpaced(m, -1.3, 0.9),
    };
    for (const StateVector& z : probes) {
      const StateVector mu = ito_drift(model, at(z));
      const StateVector fit = drift.offset + drift.slope * z;
      if ((mu - fit).norm() > 1e-6 * (1.0 + mu.norm())) {
        throw NonAffineModelError("Ito drift of '" + model.name +
                                  "' is not affine; compare by Monte Carlo instead");
      }
      const StateMatrix b = noise_matrix(model, at(z));
      if ((b - noise(z)).norm() > 1e-6 * (1.0 + b.norm())) {
        throw NonAffineModelError("diffusion of '" + model.name +
                                  "' is not quadratic; compare by Monte Carlo instead");
      }
    }
  }

  // State (m, S) with S = E[z z^T].
  auto rhs = [&](const StateVector& mean, const StateMatrix& second,
                 StateVector& dmean, StateMatrix& dsecond) {
    dmean = drift.slope * mean + drift.offset;
    StateMatrix expected_b = noise.constant;
    for (int i = 0; i < m; ++i) {
      expected_b += mean[i] * noise.linear[i];
      for (int j = 0; j < m; ++j) expected_b += 0.5 * second(i, j) * noise.quadratic[i][j];
    }
    const StateMatrix ms = drift.slope * second + drift.offset * mean.transpose();
    dsecond = ms + ms.transpose() + expected_b;
  };

  MomentPrediction out;
  StateVector mean = mean0;
  StateMatrix second = covariance0 + mean0 * mean0.transpose();
  const int substeps = 200;
  const double h = duration / static_cast<double>((records - 1) * substeps);
  for (int r = 0; r < records; ++r) {
    out.times.push_back(duration * r / (records - 1));
    out.mean.push_back(mean);
    out.covariance.push_back(second - mean * mean.transpose());
    if (r == records - 1) break;
    for (int s = 0; s < substeps; ++s) {
      StateVector k1m, k2m, k3m, k4m;
      StateMatrix k1s, k2s, k3s, k4s;
      rhs(mean, second, k1m, k1s);
      rhs(mean + 0.5 * h * k1m, second + 0.5 * h * k1s, k2m, k2s);
      rhs(mean + 0.5 * h * k2m, second + 0.5 * h * k2s, k3m, k3s);
      rhs(mean + h * k3m, second + h * k3s, k4m, k4s);
      mean += h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
      second += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
    }
  }
  return out;
}

}  // namespace shk::langevin
