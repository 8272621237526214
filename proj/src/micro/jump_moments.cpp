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

#include "shk/micro/jump_moments.hpp"

#include "shk/lorentz/potential.hpp"
#include "shk/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace shk::micro {

namespace {

// Per-interval sample: dz (6) and the kinetic energy change.
using Sample = Eigen::Matrix<double, 7, 1>;

// Statistic vector: drift (6), upper-triangle second moments (21), kinetic.
using Stat = Eigen::Matrix<double, 28, 1>;

Stat statistic(const Sample& s, double tau) {
  Stat out;
  out.head<6>() = s.head<6>() / tau;
  int k = 6;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) out[k++] = s[i] * s[j] / (2.0 * tau);
  }
  out[27] = s[6];
  return out;
}

}  // namespace

double default_box(const lorentz::LorentzParams& params, double speed) {
  const double b = params.support_radius();
  return std::max(4.0 * b, speed * params.tau + 2.0 * b);
}

JumpMoments empirical_jump_moments(const lorentz::LorentzParams& params, const Vec3& v0,
                                   const JumpMomentOptions& options) {
  params.validate();
  const double speed = v0.norm();
  if (!(speed > 0.0) || !v0.allFinite()) throw DomainError("initial velocity must be nonzero");
  if (options.intervals < 100) throw DomainError("at least 100 intervals are required");
  if (options.jackknife_blocks < 2) throw DomainError("jackknife needs at least two blocks");
  const double tau = params.tau;
  const double box = options.box > 0.0 ? options.box : default_box(params, speed);
  VerletOptions verlet;
  verlet.dt = options.dt > 0.0 ? options.dt : default_time_step(params, speed);
  verlet.energy_tolerance = options.energy_tolerance;

  const std::size_t n = options.intervals;
  std::vector<Sample> samples(n);
  std::vector<double> drifts(n, 0.0);
  std::vector<double> ion_counts(n, 0.0);
  const Vec3 start_x = Vec3::Constant(0.5 * box);

  auto run_interval = [&](const IonField& field, const PhasePoint& start, std::size_t i) {
    double drift = 0.0;
    PhasePoint end;
    try {
      end = verlet_advance(field, start, tau, verlet, &drift);
    } catch (const Error& e) {
      throw NumericalError("interval " + std::to_string(i) + ": " + e.what());
    }
    Sample s;
    s.head<3>() = end.x() - start.x() - tau * Vec3(start.v());
    s.segment<3>(3) = end.v() - start.v();
    s[6] = 0.5 * (end.v().squaredNorm() - start.v().squaredNorm());
    samples[i] = s;
    drifts[i] = drift;
    return end;
  };

  auto make_field = [&](std::uint64_t stream) {
    return options.lazy_field ? IonField::lazy(params, box, options.seed, stream)
                              : sample_ion_field(params, box, options.seed, stream);
  };
  double ions = 0.0;
  if (options.resample) {
    parallel_for(n, options.workers, [&](std::size_t i) {
      const IonField field = make_field(i + 1);
      run_interval(field, PhasePoint(start_x, v0), i);
      ion_counts[i] = static_cast<double>(field.size());
    });
    for (double c : ion_counts) ions += c / static_cast<double>(n);
  } else {
    const IonField field = make_field(0);
    PhasePoint state(start_x, v0);
    for (std::size_t i = 0; i < n; ++i) state = run_interval(field, state, i);
    ions = static_cast<double>(field.size());
  }

  // Blocked jackknife.
  const std::size_t blocks = std::min(options.jackknife_blocks, n);
  std::vector<Stat> block_sum(blocks, Stat::Zero());
  std::vector<std::size_t> block_count(blocks, 0);
  Stat total = Stat::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i * blocks / n;
    const Stat st = statistic(samples[i], tau);
    block_sum[b] += st;
    ++block_count[b];
    total += st;
  }
  const Stat mean = total / static_cast<double>(n);
  Stat var = Stat::Zero();
  for (std::size_t b = 0; b < blocks; ++b) {
    const Stat loo = (total - block_sum[b]) / static_cast<double>(n - block_count[b]);
    var += (loo - mean).cwiseAbs2();
  }
  const Stat err = (var * (static_cast<double>(blocks - 1) / blocks)).cwiseSqrt();

  JumpMoments out;
  out.drift = mean.head<6>();
  out.drift_stderr = err.head<6>();
  int k = 6;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      out.diffusion(i, j) = out.diffusion(j, i) = mean[k];
      out.diffusion_stderr(i, j) = out.diffusion_stderr(j, i) = err[k];
      ++k;
    }
  }
  out.kinetic_increment = mean[27];
  out.kinetic_increment_stderr = err[27];
  for (double d : drifts) out.max_energy_drift = std::max(out.max_energy_drift, d);
  out.intervals = n;
  out.ions = ions;
  out.box = box;
  out.dt = verlet.dt;
  return out;
}

std::string jump_moments_csv(const JumpMoments& m) {
  std::ostringstream out;
  char buf[96];
  out << "kind,i,j,value,stderr\r\n";
  for (int i = 0; i < 6; ++i) {
    std::snprintf(buf, sizeof buf, "drift,%d,,%.17g,%.17g\r\n", i, m.drift[i], m.drift_stderr[i]);
    out << buf;
  }
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      std::snprintf(buf, sizeof buf, "diffusion,%d,%d,%.17g,%.17g\r\n", i, j, m.diffusion(i, j),
                    m.diffusion_stderr(i, j));
      out << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "kinetic_increment,,,%.17g,%.17g\r\n", m.kinetic_increment,
                m.kinetic_increment_stderr);
  out << buf;
  return out.str();
}

}  // namespace shk::micro
