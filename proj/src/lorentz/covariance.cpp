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

#include "shk/lorentz/covariance.hpp"

#include "shk/common.hpp"
#include "shk/quad/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shk::lorentz {

namespace {

constexpr double kPi = std::numbers::pi;

double gl_exact(const std::function<double(double)>& f, double a, double b) {
  return quad::integrate_panel(f, a, b, quad::gauss_legendre(8));
}

}  // namespace

IsotropicCovariance::IsotropicCovariance(RegularizedPotential potential)
    : potential_(std::move(potential)) {
  const auto bp = potential_.breakpoints();
  const double a = bp[1], b = bp[3];

  // C(0) = 4 pi integral of psi^2.
  double sq = 0.0;
  for (int i = 0; i < 3; ++i) {
    sq += gl_exact([&](double r) {
      const double p = potential_.radial_weight(r);
      return p * p;
    }, bp[i], bp[i + 1]);
  }
  c0_ = 4.0 * kPi * sq;

  // C''(0) = -(4 pi / 3) integral of g'(r)^2 r^2; the 1/r piece gives
  // lambda - 1 in closed form.
  auto grad_sq = [&](double r) {
    const double g = potential_.derivative(r) * r;
    return g * g;
  };
  const double slope_sq = gl_exact(grad_sq, 0.0, a) + (1.0 / a - 1.0) + gl_exact(grad_sq, 1.0, b);
  c2_origin_ = -4.0 * kPi / 3.0 * slope_sq;
  // The near form loses accuracy once its inner range must resolve the core
  // from far away; the bipolar form loses it as 1/d^3 near the origin. The
  // two noise levels cross around 128 core radii.
  near_ = std::min(0.5, 128.0 * a);

  // All sums and differences of potential breakpoints.
  for (double x : bp) {
    for (double y : bp) {
      const double s = x + y, t = std::abs(x - y);
      if (s > 0.0) kinks_.push_back(s);
      if (t > 0.0) kinks_.push_back(t);
    }
  }
  std::sort(kinks_.begin(), kinks_.end());
  kinks_.erase(std::unique(kinks_.begin(), kinks_.end(),
                           [](double u, double v) { return std::abs(u - v) < 1e-15; }),
               kinks_.end());
}

void IsotropicCovariance::moments(double d, double& f, double& f1, double& f2, int order) const {
  const auto bp = potential_.breakpoints();
  const double b = bp[3];
  std::vector<double> edges{0.0, b};
  for (double x : bp) {
    for (double r : {x, x - d, d - x, d + x}) {
      if (r > 0.0 && r < b) edges.push_back(r);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const auto& rule = quad::gauss_legendre(8);
  const RegularizedPotential& g = potential_;
  f = f1 = f2 = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    if (hi - lo <= 0.0) continue;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = mid + half * rule.nodes[i];
      const double w = half * rule.weights[i] * g.radial_weight(r);
      const double gap = d - r;
      f += w * (g.cumulative_weight(d + r) - g.cumulative_weight(std::abs(gap)));
      if (order >= 1) {
        const double sign = gap > 0.0 ? 1.0 : (gap < 0.0 ? -1.0 : 0.0);
        f1 += w * (g.radial_weight(d + r) - sign * g.radial_weight(std::abs(gap)));
      }
      if (order >= 2) {
        f2 += w * (g.radial_weight_slope(d + r) - g.radial_weight_slope(std::abs(gap)));
      }
    }
  }
}

double IsotropicCovariance::near_field(double d, int order) const {
  const RegularizedPotential& g = potential_;
  const auto bp = g.breakpoints();
  const double b = bp[3];
  // Inner integrand in s: psi, psi' or psi'' of the odd extension at r + d s,
  // times s^order.
  auto inner_term = [&](double u) {
    switch (order) {
      case 0: return u < 0.0 ? -g.radial_weight(u) : g.radial_weight(u);
      case 1: return g.radial_weight_slope(u);
      default: return g.radial_weight_curvature(u);
    }
  };
  const auto& rule = quad::gauss_legendre(8);
  auto inner = [&](double r) {
    std::vector<double> cuts{-1.0, 1.0};
    if (d > 0.0) {
      for (double k : bp) {
        for (double target : {k, -k}) {
          const double s = (target - r) / d;
          if (s > -1.0 && s < 1.0) cuts.push_back(s);
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double half = 0.5 * (cuts[c + 1] - cuts[c]), mid = 0.5 * (cuts[c + 1] + cuts[c]);
      if (half <= 0.0) continue;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = mid + half * rule.nodes[i];
        sum += half * rule.weights[i] * std::pow(s, order) * inner_term(r + d * s);
      }
    }
    return sum;
  };
  std::vector<double> edges{0.0, b};
  for (double k : bp) {
    for (double r : {k, k - d, k + d, d - k}) {
      if (r > 0.0 && r < b) edges.push_back(r);
    }
  }
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double half = 0.5 * (edges[e + 1] - edges[e]), mid = 0.5 * (edges[e + 1] + edges[e]);
    if (half <= 0.0) continue;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = mid + half * rule.nodes[i];
      total += half * rule.weights[i] * g.radial_weight(r) * inner(r);
    }
  }
  return 2.0 * kPi * total;
}

double IsotropicCovariance::value(double d) const {
  d = std::abs(d);
  if (d >= support_radius()) return 0.0;
  if (d < near_) return near_field(d, 0);
  double f, f1, f2;
  moments(d, f, f1, f2, 0);
  return 2.0 * kPi * f / d;
}

double IsotropicCovariance::slope(double d) const {
  const double sign = d < 0.0 ? -1.0 : 1.0;
  d = std::abs(d);
  if (d >= support_radius()) return 0.0;
  if (d < near_) return sign * near_field(d, 1);
  double f, f1, f2;
  moments(d, f, f1, f2, 1);
  return sign * 2.0 * kPi * (f1 / d - f / (d * d));
}

double IsotropicCovariance::curvature(double d) const {
  d = std::abs(d);
  if (d >= support_radius()) return 0.0;
  if (d < near_) return near_field(d, 2);
  double f, f1, f2;
  moments(d, f, f1, f2, 2);
  return 2.0 * kPi * (f2 / d - 2.0 * f1 / (d * d) + 2.0 * f / (d * d * d));
}

double potential_covariance(double d, double plasma_parameter, double delta_reg) {
  if (d < 0.0) throw DomainError("separation must be non-negative");
  return IsotropicCovariance(plasma_parameter, delta_reg).value(d);
}

double overlap_integral(const std::function<double(double)>& profile, double d, double radius,
                        const std::vector<double>& breakpoints, double rel_tol) {
  d = std::abs(d);
  quad::AdaptiveOptions inner_opt;
  inner_opt.rel_tol = 0.1 * rel_tol;
  inner_opt.abs_tol = 1e-15;
  quad::AdaptiveOptions outer_opt;
  outer_opt.rel_tol = rel_tol;
  outer_opt.abs_tol = 1e-13;

  // Angular average of profile(|r - d e|) at fixed r.
  auto shell = [&](double r) {
    if (d == 0.0 || r == 0.0) return 2.0 * profile(std::max(r, d));
    std::vector<double> cuts;
    for (double s : breakpoints) {
      const double mu = (r * r + d * d - s * s) / (2.0 * r * d);
      if (mu > -1.0 && mu < 1.0) cuts.push_back(mu);
    }
    return quad::integrate_adaptive(
        [&](double mu) {
          const double s2 = std::max(0.0, r * r + d * d - 2.0 * r * d * mu);
          return profile(std::sqrt(s2));
        },
        -1.0, 1.0, cuts, inner_opt);
  };
  std::vector<double> cuts;
  for (double s : breakpoints) {
    for (double r : {s, s + d, std::abs(s - d)}) {
      if (r > 0.0 && r < radius) cuts.push_back(r);
    }
  }
  if (d > 0.0 && d < radius) cuts.push_back(d);
  return 2.0 * kPi *
         quad::integrate_adaptive([&](double r) { return r * r * profile(r) * shell(r); }, 0.0,
                                  radius, cuts, outer_opt);
}

}  // namespace shk::lorentz
