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

#include "shk/cli/experiments.hpp"

#include "shk/langevin/fokker_planck.hpp"
#include "shk/langevin/integrate.hpp"
#include "shk/lorentz/tensors.hpp"
#include "shk/micro/jump_moments.hpp"
#include "shk/parallel.hpp"
#include "shk/phase/poisson.hpp"
#include "shk/random/philox.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace shk::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int workers_for(const ExperimentConfig& c) { return c.workers > 0 ? c.workers : default_workers(); }

// Mean and standard error of per-sample values.
struct Estimate {
  double mean = 0.0;
  double error = 0.0;
};

Estimate estimate(const std::vector<double>& samples) {
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return {mean, n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

// Variance rate per velocity component between two records, estimated from
// per-particle squared deviations so that correlations between components
// are carried into the error bar. Only every `stride`-th particle is used.
Estimate velocity_variance_rate(const langevin::EnsembleTrajectories& traj, std::size_t record,
                                std::size_t stride) {
  const double t = traj.times[record] - traj.times[0];
  const int n = traj.dim;
  std::vector<std::size_t> members;
  for (std::size_t p = 0; p < traj.particles; p += stride) members.push_back(p);
  const double count = static_cast<double>(members.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  for (auto p : members) mean += traj.at(record, p).v() - traj.at(0, p).v();
  mean /= count;
  std::vector<double> samples;
  samples.reserve(members.size());
  const double bessel = count / (count - 1.0);
  for (auto p : members) {
    const Eigen::VectorXd d = traj.at(record, p).v() - traj.at(0, p).v() - mean;
    samples.push_back(bessel * d.squaredNorm() / (n * t));
  }
  return estimate(samples);
}

std::vector<PhasePoint> copies(const PhasePoint& z, std::size_t count) {
  return std::vector<PhasePoint>(count, z);
}

int record_stride(double duration, double dt, int records) {
  const long long steps = std::max(1LL, std::llround(duration / dt));
  return static_cast<int>(std::max(1LL, steps / std::max(1, records - 1)));
}

Series moment_series(const std::string& name, const std::string& title,
                     const std::vector<double>& times, const std::vector<Estimate>& values,
                     double predicted_rate) {
  Series s;
  s.name = name;
  s.title = title;
  s.columns = {"t", "var_v", "stderr_var_v", "predicted"};
  for (std::size_t r = 0; r < times.size(); ++r) {
    const double t = times[r] - times[0];
    s.rows.push_back({t, values[r].mean * t, values[r].error * t, predicted_rate * t});
  }
  s.x = "t";
  s.y = {"var_v", "predicted"};
  return s;
}

void run_pulse(const ExperimentConfig& c, RunReport& report) {
  const models::PulseParams& p = c.pulse;
  const double tau = p.tau;
  const double duration = c.duration > 0.0 ? c.duration : 20.0 * tau;
  const double dt = c.dt > 0.0 ? c.dt : tau;
  const double m0 = p.m0();
  const double rate = m0 * m0 / (3.0 * tau);

  auto start = Clock::now();
  const LangevinModel model = pulse_model(p);
  langevin::FlowOptions opt;
  opt.duration = duration;
  opt.dt = dt;
  opt.seed = c.seed;
  opt.mode = langevin::NoiseMode::independent;
  opt.record_every = record_stride(duration, dt, c.records);
  opt.workers = workers_for(c);
  const auto origin = PhasePoint::origin(3);
  const auto traj = langevin::simulate_flow(model, copies(origin, c.particles), opt);
  std::vector<Estimate> rates{{0.0, 0.0}};
  for (std::size_t r = 1; r < traj.records(); ++r) rates.push_back(velocity_variance_rate(traj, r, 1));
  report.series.push_back(
      moment_series("pulse_variance", "velocity variance per component", traj.times, rates, rate));
  report.checks.push_back(
      within_sigma("var_v slope vs m0^2/(3 tau)", rates.back().mean, rate, rates.back().error, c.sigmas));
  report.timings.emplace_back("sde", seconds_since(start));

  if (c.micro_intervals == 0) return;
  start = Clock::now();
  // One particle through the exact interval map; each interval is one jump.
  const auto micro =
      models::pulse_micro_simulate(p, {origin}, c.micro_intervals, c.seed ^ 0x6d6963726fULL);
  const StateMatrix noise = langevin::noise_matrix(model, origin);
  Series table;
  table.name = "pulse_jump_moments";
  table.columns = {"i", "j", "empirical", "stderr", "predicted"};
  const std::size_t jumps = c.micro_intervals;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      std::vector<double> samples(jumps);
      for (std::size_t k = 0; k < jumps; ++k) {
        const PhasePoint& a = micro.at(k, 0);
        const PhasePoint& b = micro.at(k + 1, 0);
        samples[k] = (b[3 + i] - a[3 + i]) * (b[3 + j] - a[3 + j]) / (2.0 * tau);
      }
      const Estimate e = estimate(samples);
      const double predicted = 0.5 * noise(3 + i, 3 + j);
      table.rows.push_back({double(i + 1), double(j + 1), e.mean, e.error, predicted});
      report.checks.push_back(within_sigma("micro D_vv(" + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + ") vs model",
                                           e.mean, predicted, e.error, c.sigmas));
    }
  }
  report.series.push_back(table);
  report.timings.emplace_back("micro", seconds_since(start));
}

void run_karney(const ExperimentConfig& c, RunReport& report) {
  const models::KarneyParams& k = c.karney;
  const double duration = c.duration > 0.0 ? c.duration : 1.0;
  const double dt = c.dt > 0.0 ? c.dt : 0.05;
  const double action = c.karney_action;
  const auto start = Clock::now();
  const LangevinModel model = models::karney_model(k);
  std::vector<PhasePoint> initial;
  random::Sampler phases(c.seed, 0x6b61726eULL);
  for (std::size_t i = 0; i < c.particles; ++i) {
    Eigen::VectorXd x(1), v(1);
    x << 2.0 * std::numbers::pi * phases.uniform();
    v << action;
    initial.emplace_back(x, v);
  }
  langevin::FlowOptions opt;
  opt.duration = duration;
  opt.dt = dt;
  opt.seed = c.seed;
  opt.record_every = record_stride(duration, dt, c.records);
  opt.workers = workers_for(c);
  const auto traj = langevin::simulate_flow(model, initial, opt);

  const double predicted = models::karney_action_diffusion(k, action);
  Series s;
  s.name = "karney_action";
  s.title = "mean squared action change";
  s.columns = {"t", "msd_action", "stderr_msd_action", "predicted"};
  Estimate last;
  for (std::size_t r = 0; r < traj.records(); ++r) {
    std::vector<double> sq(traj.particles);
    for (std::size_t p = 0; p < traj.particles; ++p) {
      const double d = traj.at(r, p)[1] - traj.at(0, p)[1];
      sq[p] = d * d;
    }
    const Estimate e = estimate(sq);
    const double t = traj.times[r];
    s.rows.push_back({t, e.mean, e.error, 2.0 * predicted * t});
    last = e;
  }
  s.x = "t";
  s.y = {"msd_action", "predicted"};
  report.series.push_back(s);
  const double t = traj.times.back();
  report.checks.push_back(within_sigma("<dI^2>/(2T) vs action diffusion", last.mean / (2.0 * t),
                                       predicted, last.error / (2.0 * t), c.sigmas));
  report.timings.emplace_back("sde", seconds_since(start));
}

void run_scan(const ExperimentConfig& c, RunReport& report) {
  const auto start = Clock::now();
  const auto rows = lorentz::asymptotic_scan(c.scan_lambdas, c.scan_speed, c.scan_delta_reg);
  Series s;
  s.name = "lorentz_scan";
  s.title = "D_HL against D_L";
  s.columns = {"Lambda",      "log10_Lambda",        "rel_dev_vv",          "par_perp_ratio",
               "chi_drift",   "energy_rate_numeric", "energy_rate_analytic"};
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    s.rows.push_back({r.plasma_parameter, std::log10(r.plasma_parameter), r.rel_dev_vv,
                      r.par_perp_ratio, r.chi_drift, r.energy_rate_numeric,
                      r.energy_rate_analytic});
    if (i > 0 && !(r.rel_dev_vv < rows[i - 1].rel_dev_vv)) decreasing = false;
    report.checks.push_back(within_relative(
        "energy rate numeric vs analytic at Lambda=" + std::to_string(long(r.plasma_parameter)),
        r.energy_rate_numeric, r.energy_rate_analytic, 1e-3));
  }
  s.x = "log10_Lambda";
  s.y = {"rel_dev_vv", "par_perp_ratio"};
  report.series.push_back(s);
  if (rows.size() > 1) report.checks.push_back(holds("rel_dev_vv strictly decreasing", decreasing));
  report.checks.push_back(
      below("par/perp eigenvalue ratio at largest Lambda", rows.back().par_perp_ratio,
            c.scan_ratio_limit));
  report.timings.emplace_back("scan", seconds_since(start));
}

void run_micro(const ExperimentConfig& c, RunReport& report) {
  const auto start = Clock::now();
  const lorentz::LorentzParams& p = c.micro;
  p.validate();
  const Vec3 v0(0.0, 0.0, c.micro_speed);
  micro::JumpMomentOptions opt;
  opt.intervals = c.micro_jumps;
  opt.seed = c.seed;
  opt.box = c.micro_box;
  opt.dt = c.micro_dt;
  opt.lazy_field = c.micro_lazy;
  opt.workers = workers_for(c);
  const micro::JumpMoments m = micro::empirical_jump_moments(p, v0, opt);
  report.timings.emplace_back("micro", seconds_since(start));

  const auto predict_start = Clock::now();
  const lorentz::IsotropicCovariance cov(p.plasma_parameter, p.delta_reg);
  const Mat6 d = lorentz::diffusion_tensor_hl(v0, p, cov);
  const Vec6 drift = lorentz::ito_drift_correction_hl(v0, p, cov);
  report.timings.emplace_back("prediction", seconds_since(predict_start));

  static const char* kAxis[] = {"x", "y", "z", "vx", "vy", "vz"};
  Series ds;
  ds.name = "micro_drift";
  ds.columns = {"i", "empirical", "stderr", "predicted"};
  for (int i = 0; i < 6; ++i) {
    ds.rows.push_back({double(i), m.drift[i], m.drift_stderr[i], drift[i]});
    report.checks.push_back(within_sigma(std::string("drift ") + kAxis[i], m.drift[i], drift[i],
                                         m.drift_stderr[i], c.sigmas));
  }
  Series dd;
  dd.name = "micro_diffusion";
  dd.columns = {"i", "j", "empirical", "stderr", "predicted"};
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      dd.rows.push_back({double(i), double(j), m.diffusion(i, j), m.diffusion_stderr(i, j), d(i, j)});
      if (i >= 3) {
        report.checks.push_back(within_sigma(
            std::string("diffusion ") + kAxis[i] + "," + kAxis[j], m.diffusion(i, j), d(i, j),
            m.diffusion_stderr(i, j), c.sigmas));
      }
    }
  }
  report.series.push_back(ds);
  report.series.push_back(dd);
  Series info;
  info.name = "micro_run";
  info.columns = {"intervals", "box", "dt", "mean_ions", "max_energy_drift",
                  "kinetic_increment", "stderr_kinetic_increment"};
  info.rows.push_back({double(m.intervals), m.box, m.dt, m.ions, m.max_energy_drift,
                       m.kinetic_increment, m.kinetic_increment_stderr});
  report.series.push_back(info);
}

void run_two_particle(const ExperimentConfig& c, RunReport& report) {
  const auto start = Clock::now();
  const models::PulseParams& p = c.pulse;
  const double tau = p.tau;
  const double duration = c.duration > 0.0 ? c.duration : 20.0 * tau;
  const double dt = c.dt > 0.0 ? c.dt : 0.02 * tau;
  const LangevinModel physical = pulse_model(p);
  const ScalarField phase(
      "x1", 3, [](const PhasePoint& z) { return z[0]; },
      [](const PhasePoint&) -> StateVector {
        StateVector g = StateVector::Zero(6);
        g[0] = 1.0;
        return g;
      });
  const LangevinModel counter = models::counterexample_model(p, phase);

  // Pair members start apart in x1 with different velocities.
  const PhasePoint first(Vec3(0.0, 0.0, 0.0), Vec3(0.3, -0.2, 0.1));
  const PhasePoint second(Vec3(c.separation, 0.0, 0.0), Vec3(-0.1, 0.4, 0.2));
  std::vector<PhasePoint> initial;
  for (std::size_t j = 0; j < c.particles; ++j) {
    initial.push_back(first);
    initial.push_back(second);
  }
  langevin::FlowOptions opt;
  opt.duration = duration;
  opt.dt = dt;
  opt.seed = c.seed;
  opt.mode = langevin::NoiseMode::paired;
  opt.record_every = record_stride(duration, dt, c.records);
  opt.workers = workers_for(c);
  const auto phys = langevin::simulate_flow(physical, initial, opt);
  const auto ctr = langevin::simulate_flow(counter, initial, opt);

  // Var of v1 difference within pairs, at each record.
  auto separation_variance = [&](const langevin::EnsembleTrajectories& t, std::size_t r) {
    std::vector<double> d(c.particles);
    for (std::size_t j = 0; j < c.particles; ++j) d[j] = t.at(r, 2 * j)[3] - t.at(r, 2 * j + 1)[3];
    const Estimate m = estimate(d);
    std::vector<double> sq(c.particles);
    const double bessel = double(c.particles) / double(c.particles - 1);
    for (std::size_t j = 0; j < c.particles; ++j) sq[j] = bessel * (d[j] - m.mean) * (d[j] - m.mean);
    return estimate(sq);
  };
  Series s;
  s.name = "two_particle";
  s.title = "variance of the pair velocity difference";
  s.columns = {"t", "var_sep_v_physical", "var_sep_v_counter", "stderr_physical", "stderr_counter"};
  for (std::size_t r = 0; r < phys.records(); ++r) {
    const Estimate a = separation_variance(phys, r), b = separation_variance(ctr, r);
    s.rows.push_back({phys.times[r], a.mean, b.mean, a.error, b.error});
  }
  s.x = "t";
  s.y = {"var_sep_v_physical", "var_sep_v_counter"};
  report.series.push_back(s);

  double worst = 0.0;
  for (std::size_t r = 0; r < phys.records(); ++r) {
    for (std::size_t j = 0; j < c.particles; ++j) {
      const Eigen::VectorXd now = phys.at(r, 2 * j).v() - phys.at(r, 2 * j + 1).v();
      const Eigen::VectorXd then = phys.at(0, 2 * j).v() - phys.at(0, 2 * j + 1).v();
      worst = std::max(worst, (now - then).cwiseAbs().maxCoeff());
    }
  }
  report.checks.push_back(below("physical: max change of pair velocity difference", worst, 1e-12));
  const std::size_t last = phys.records() - 1;
  const Estimate growth = separation_variance(ctr, last);
  const double t = ctr.times[last];
  report.checks.push_back(positive_at("counterexample: Var[v1 difference] slope",
                                      growth.mean / t, growth.error / t, c.sigmas));
  // One member per pair so the samples are independent.
  const Estimate a = velocity_variance_rate(phys, last, 2);
  const Estimate b = velocity_variance_rate(ctr, last, 2);
  report.checks.push_back(within_sigma("one-particle var_v slope: counterexample vs physical",
                                       b.mean, a.mean, std::hypot(a.error, b.error), c.sigmas));
  report.timings.emplace_back("sde", seconds_since(start));
}

void run_witness(const ExperimentConfig& c, RunReport& report) {
  const auto start = Clock::now();
  const lorentz::LorentzParams& p = c.witness;
  p.validate();
  random::Sampler draw(c.seed, 0x77697473ULL);
  const ScalarField kinetic(
      "kinetic", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); },
      [](const PhasePoint& z) -> StateVector {
        StateVector g = StateVector::Zero(6);
        g.tail(3) = z.v();
        return g;
      });
  Series s;
  s.name = "witness";
  s.columns = {"sample", "speed", "numeric", "analytic", "rel_err", "invariant_contraction"};
  double worst = 0.0, worst_invariant = 0.0;
  for (std::size_t k = 0; k < c.witness_samples; ++k) {
    Vec3 v, w, x, a;
    for (int i = 0; i < 3; ++i) {
      v[i] = draw.normal();
      w[i] = draw.normal();
      x[i] = draw.uniform(-2.0, 2.0);
      a[i] = draw.normal();
    }
    v *= draw.uniform(0.5, 2.0) / v.norm();
    const auto r = lorentz::non_hamiltonian_witness(v, w, p);
    const double rel = std::abs(r.numeric - r.analytic) / std::abs(r.analytic);

    // h = a.v + (a.v)^2 / 2 + sin(v3) Poisson-commutes with the kinetic energy.
    const ScalarField h(
        "h", 3,
        [a](const PhasePoint& z) {
          const double av = a.dot(Vec3(z.v()));
          return av + 0.5 * av * av + std::sin(z[5]);
        },
        [a](const PhasePoint& z) -> StateVector {
          StateVector g = StateVector::Zero(6);
          g.tail(3) = (1.0 + a.dot(Vec3(z.v()))) * a;
          g[5] += std::cos(z[5]);
          return g;
        });
    const SymmetricTensorField square("dh dh", 3, [h](const PhasePoint& z) -> StateMatrix {
      const StateVector g = h.gradient(z);
      return g * g.transpose();
    });
    const StateMatrix lie = lie_derivative_tensor(kinetic, square, PhasePoint(x, v));
    StateVector y(6);
    y << w, w;
    const double invariant = std::abs(y.dot(lie * y));
    worst = std::max(worst, rel);
    worst_invariant = std::max(worst_invariant, invariant);
    s.rows.push_back({double(k), v.norm(), r.numeric, r.analytic, rel, invariant});
  }
  report.series.push_back(s);
  report.checks.push_back(below("max relative error of Lie derivative of alpha_L", worst,
                                c.witness_tolerance));
  report.checks.push_back(below("max |Lie derivative of dh dh| with {h, H0} = 0",
                                worst_invariant, 1e-6));
  report.timings.emplace_back("witness", seconds_since(start));
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  report.kind = kind_name(config.kind);
  report.config_json = config_echo(config);
  switch (config.kind) {
    case ExperimentKind::pulse: run_pulse(config, report); break;
    case ExperimentKind::karney: run_karney(config, report); break;
    case ExperimentKind::lorentz_scan: run_scan(config, report); break;
    case ExperimentKind::lorentz_micro: run_micro(config, report); break;
    case ExperimentKind::two_particle: run_two_particle(config, report); break;
    case ExperimentKind::witness: run_witness(config, report); break;
  }
  if (!config.check) report.checks.clear();
  return report;
}

}  // namespace shk::cli
