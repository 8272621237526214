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

#include "shk/lorentz/tensors.hpp"

#include "shk/phase/poisson.hpp"
#include "shk/quad/gauss_legendre.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace shk::lorentz {

namespace {

constexpr double kPi = std::numbers::pi;

quad::AdaptiveOptions tight() {
  quad::AdaptiveOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-300;
  o.order = 10;
  o.max_depth = 30;
  // Covariance derivatives carry about 1e-10 relative noise at large Lambda.
  o.noise_floor = 1e-10;
  return o;
}

double speed_of(const Vec3& v) {
  const double s = v.norm();
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("velocity must be nonzero and finite");
  return s;
}

// Time breakpoints: separation kinks divided by the speed.
std::vector<double> time_kinks(const IsotropicCovariance& cov, double speed) {
  std::vector<double> t;
  for (double k : cov.breakpoints()) t.push_back(k / speed);
  // The 1/d stretch of the covariance slope spans decades; split it.
  const double a = cov.potential().core_radius();
  for (double d = 4.0 * a; d < 1.0; d *= 4.0) t.push_back(d / speed);
  return t;
}

// Perpendicular and parallel eigenvalues of the field covariance.
inline double perp_part(const IsotropicCovariance& cov, double d) {
  if (d < 1e-300) return -cov.curvature_at_origin();
  return -cov.slope(d) / d;
}

}  // namespace

Mat3 field_covariance(const Vec3& delta, const IsotropicCovariance& cov) {
  const double d = delta.norm();
  if (d == 0.0) return -cov.curvature_at_origin() * Mat3::Identity();
  if (d >= cov.support_radius()) return Mat3::Zero();
  const Vec3 e = delta / d;
  const Mat3 ee = e * e.transpose();
  return -cov.slope(d) / d * (Mat3::Identity() - ee) - cov.curvature(d) * ee;
}

Mat3 closed_form_In(int n, const Vec3& e, const IsotropicCovariance& cov) {
  if (n < 0) throw DomainError("moment order must be non-negative");
  const Vec3 u = e.normalized();
  const auto& kinks = cov.breakpoints();
  const double k = quad::integrate_adaptive(
      [&](double l) {
        if (n == 0) return cov.slope(l) / l;
        return std::pow(l, n - 1) * cov.slope(l);
      },
      0.0, cov.support_radius(), kinks, tight());
  return -2.0 * k * (Mat3::Identity() - (n + 1.0) * u * u.transpose());
}

Mat3 direct_In(int n, const Vec3& e, const IsotropicCovariance& cov, double half_width) {
  if (n < 0) throw DomainError("moment order must be non-negative");
  const Vec3 u = e.normalized();
  std::vector<double> cuts{0.0};
  for (double k : cov.breakpoints()) {
    cuts.push_back(k);
    cuts.push_back(-k);
  }
  const auto entries = quad::integrate_adaptive_vector<9>(
      [&](double l) {
        const Mat3 c = field_covariance(l * u, cov) * std::pow(std::abs(l), n);
        return Eigen::Matrix<double, 9, 1>(Eigen::Map<const Eigen::Matrix<double, 9, 1>>(c.data()));
      },
      -half_width, half_width, cuts, tight());
  return Eigen::Map<const Mat3>(entries.data());
}

double mean_s2_lorentz(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov) {
  p.validate();
  const double s = speed_of(v);
  const double tau = p.tau;
  const double end = std::min(tau, cov.support_radius() / s);
  const double integral = quad::integrate_adaptive(
      [&](double t) {
        const double d = s * t;
        const double trace = 2.0 * perp_part(cov, d) - cov.curvature(d);
        return t * (tau - t) * trace;
      },
      0.0, end, time_kinks(cov, s), tight());
  return -0.5 * p.coupling() * integral;
}

Vec3 drift_correction_hl(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov) {
  const double s = speed_of(v);
  const double h = 1e-4 * s;
  // <s2> depends on |v| only.
  const Vec3 e = v / s;
  const double up = mean_s2_lorentz((s + h) * e, p, cov);
  const double down = mean_s2_lorentz((s - h) * e, p, cov);
  return (up - down) / (2.0 * h) * e / p.tau;
}

Mat6 diffusion_tensor_hl(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov) {
  p.validate();
  const double s = speed_of(v);
  const double tau = p.tau;
  const double end = std::min(tau, cov.support_radius() / s);
  // Weights for the vv, xv and xx blocks. The parallel eigenvalue is far
  // smaller than the perpendicular one at large Lambda, so each gets its own
  // adaptive pass and tolerance.
  using V3 = Eigen::Matrix<double, 3, 1>;
  auto weights = [tau](double t) {
    return V3((tau - t) / tau, 0.5 * (tau - t),
              (tau * tau * tau / 3.0 - 0.5 * tau * tau * t + t * t * t / 6.0) / tau);
  };
  const auto kinks = time_kinks(cov, s);
  const V3 m_perp = quad::integrate_adaptive_vector<3>(
      [&](double t) { return V3(weights(t) * perp_part(cov, s * t)); }, 0.0, end, kinks, tight());
  const V3 m_par = quad::integrate_adaptive_vector<3>(
      [&](double t) { return V3(-weights(t) * cov.curvature(s * t)); }, 0.0, end, kinks, tight());
  const double m[6] = {m_perp[0], m_par[0], m_perp[1], m_par[1], m_perp[2], m_par[2]};
  const Vec3 e = v / s;
  const Mat3 par = e * e.transpose();
  const Mat3 perp = Mat3::Identity() - par;
  const double c = p.coupling();
  Mat6 d = Mat6::Zero();
  d.bottomRightCorner<3, 3>() = c * (m[0] * perp + m[1] * par);
  d.topRightCorner<3, 3>() = c * (m[2] * perp + m[3] * par);
  d.bottomLeftCorner<3, 3>() = d.topRightCorner<3, 3>();
  d.topLeftCorner<3, 3>() = c * (m[4] * perp + m[5] * par);

  Eigen::SelfAdjointEigenSolver<Mat6> solver(d, Eigen::EigenvaluesOnly);
  const double trace = d.trace();
  if (solver.eigenvalues()[0] < -1e-8 * std::abs(trace)) {
    throw NumericalError("diffusion tensor is not positive semi-definite");
  }
  return d;
}

double collision_frequency(const Vec3& v, const LorentzParams& p) {
  p.validate();
  const double s = speed_of(v);
  const double lambda = p.plasma_parameter;
  return std::log(lambda) / (8.0 * kPi * lambda) / (s * s * s);
}

Mat6 lorentz_tensor(const Vec3& v, const LorentzParams& p) {
  const double nu = collision_frequency(v, p);
  Mat6 d = Mat6::Zero();
  d.bottomRightCorner<3, 3>() = nu * (v.squaredNorm() * Mat3::Identity() - v * v.transpose());
  return d;
}

double energy_rate_numeric(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov) {
  const double s = speed_of(v);
  const double h = 1e-3 * s;
  double div = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 up = v, down = v;
    up[i] += h;
    down[i] -= h;
    const Vec3 fu = diffusion_tensor_hl(up, p, cov).bottomRightCorner<3, 3>() * up;
    const Vec3 fd = diffusion_tensor_hl(down, p, cov).bottomRightCorner<3, 3>() * down;
    div += (fu[i] - fd[i]) / (2.0 * h);
  }
  return div;
}

double energy_rate_exact(const Vec3& v, const LorentzParams& p, const IsotropicCovariance& cov) {
  p.validate();
  const double s = speed_of(v);
  const double reach = s * p.tau;
  const double bracket = cov.at_origin() - cov.value(reach) - reach * cov.slope(reach);
  return p.coupling() * bracket / (s * s * p.tau);
}

double energy_rate_asymptotic(const Vec3& v, const LorentzParams& p,
                              const IsotropicCovariance& cov) {
  p.validate();
  const double s = speed_of(v);
  return p.coupling() * cov.at_origin() / (s * s * p.tau);
}

Vec6 ito_drift_correction_hl(const Vec3& v, const LorentzParams& p,
                             const IsotropicCovariance& cov) {
  const double s = speed_of(v);
  const double h = 1e-3 * s;
  Vec6 div = Vec6::Zero();
  for (int j = 0; j < 3; ++j) {
    Vec3 up = v, down = v;
    up[j] += h;
    down[j] -= h;
    // Column j of D restricted to rows (x, v), differentiated along v_j.
    div += (diffusion_tensor_hl(up, p, cov).col(3 + j) - diffusion_tensor_hl(down, p, cov).col(3 + j)) /
           (2.0 * h);
  }
  Vec6 drift = div;
  drift.head<3>() += drift_correction_hl(v, p, cov);
  return drift;
}

std::vector<ScanRow> asymptotic_scan(const std::vector<double>& plasma_parameters, double speed,
                                     double delta_reg) {
  if (!(speed > 0.0)) throw DomainError("scan speed must be positive");
  for (std::size_t i = 0; i < plasma_parameters.size(); ++i) {
    if (!(plasma_parameters[i] > 10.0)) throw DomainError("scan plasma parameters must exceed 10");
    if (i > 0 && !(plasma_parameters[i] > plasma_parameters[i - 1])) {
      throw DomainError("scan plasma parameters must increase");
    }
  }
  std::vector<ScanRow> rows;
  const Vec3 v(0.0, 0.0, speed);
  for (double lambda : plasma_parameters) {
    const LorentzParams p = LorentzParams::asymptotic(lambda, delta_reg);
    const IsotropicCovariance cov(lambda, delta_reg);
    // Time in units of Lambda / omega_p.
    const Mat3 d_hl = lambda * diffusion_tensor_hl(v, p, cov).bottomRightCorner<3, 3>();
    const Mat3 d_l = lambda * lorentz_tensor(v, p).bottomRightCorner<3, 3>();
    ScanRow row{};
    row.plasma_parameter = lambda;
    row.rel_dev_vv = (d_hl - d_l).norm() / d_l.norm();
    const Vec3 e = v.normalized();
    const Vec3 n = Vec3::UnitX();
    row.par_perp_ratio = e.dot(d_hl * e) / n.dot(d_hl * n);
    // chi = <s2> rescaled: -(2 / (coupling tau^2)) <s2>; the normalized drift
    // is (1/32 pi^2) eps_1 |grad chi|.
    const double h = 1e-4 * speed;
    const double chi_up = mean_s2_lorentz(Vec3(0, 0, speed + h), p, cov);
    const double chi_down = mean_s2_lorentz(Vec3(0, 0, speed - h), p, cov);
    const double scale = -2.0 / (p.coupling() * p.tau * p.tau);
    const double grad_chi = scale * (chi_up - chi_down) / (2.0 * h);
    row.chi_drift = p.epsilon_1() * std::abs(grad_chi) / (32.0 * kPi * kPi);
    row.energy_rate_numeric = energy_rate_numeric(v, p, cov);
    row.energy_rate_analytic = energy_rate_asymptotic(v, p, cov);
    rows.push_back(row);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "Lambda,rel_dev_vv,par_perp_ratio,chi_drift,energy_rate_numeric,energy_rate_analytic\r\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.plasma_parameter << ',' << r.rel_dev_vv << ',' << r.par_perp_ratio << ','
        << r.chi_drift << ',' << r.energy_rate_numeric << ',' << r.energy_rate_analytic << "\r\n";
  }
  return out.str();
}

WitnessResult non_hamiltonian_witness(const Vec3& v, const Vec3& w, const LorentzParams& p) {
  if (!(w.norm() > 0.0)) throw DomainError("witness direction must be nonzero");
  const double nu = collision_frequency(v, p);
  const SymmetricTensorField alpha(
      "lorentz", 3, [p](const PhasePoint& z) -> StateMatrix {
        const Vec3 vel = z.v();
        const Mat6 d = lorentz_tensor(vel, p);
        return lower_tensor(StateMatrix(d));
      });
  const ScalarField kinetic(
      "kinetic", 3, [](const PhasePoint& z) { return 0.5 * z.v().squaredNorm(); },
      [](const PhasePoint& z) -> StateVector {
        StateVector g = StateVector::Zero(6);
        g.tail(3) = z.v();
        return g;
      });
  const PhasePoint z(Vec3::Zero(), v);
  const StateMatrix lie = lie_derivative_tensor(kinetic, alpha, z);
  StateVector y(6);
  y << w, w;
  const Mat3 u = v.squaredNorm() * Mat3::Identity() - v * v.transpose();
  return {y.dot(lie * y), 2.0 * nu * w.dot(u * w), nu};
}

}  // namespace shk::lorentz
