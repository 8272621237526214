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

#include "shk/coarse/kick.hpp"

#include "shk/phase/poisson.hpp"
#include "shk/quad/gauss_legendre.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace shk::coarse {

namespace {

void validate(const TimeDependentField& h, double tau, const PhasePoint& z,
              const QuadratureSpec& quad) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
  if (h.dim != z.dim()) throw DimensionError("perturbation and point differ in dimension");
  if (quad.panels < 1) throw DomainError("quadrature needs at least one panel");
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NumericalError(std::string(what) + " is not finite");
}

// Central-difference gradient of a plain function of the state.
template <class F>
StateVector fd_gradient(const F& f, const PhasePoint& z) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  const int m = 2 * z.dim();
  StateVector g(m);
  StateVector s = z.state();
  for (int i = 0; i < m; ++i) {
    const double si = s[i];
    const double step = base * std::max(1.0, std::abs(si));
    s[i] = si + step;
    const double fp = f(PhasePoint::from_state(s));
    s[i] = si - step;
    const double fm = f(PhasePoint::from_state(s));
    s[i] = si;
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

double bracket(const StateVector& df, const StateVector& dg) {
  const auto n = df.size() / 2;
  return df.head(n).dot(dg.tail(n)) - df.tail(n).dot(dg.head(n));
}

}  // namespace

QuadratureSpec QuadratureSpec::for_correlation_time(double tau, double correlation_time,
                                                    int order) {
  if (!(correlation_time > 0.0)) throw DomainError("correlation time must be positive");
  QuadratureSpec q;
  q.order = order;
  q.panels = static_cast<int>(std::floor(4.0 * tau / correlation_time)) + 1;
  return q;
}

double compute_s1(const TimeDependentField& h, double tau, const PhasePoint& z,
                  const QuadratureSpec& quad, const FlowMap& flow) {
  validate(h, tau, z, quad);
  double total = 0.0;
  if (h.smooth) {
    total += quad::integrate_composite(
        [&](double lambda) { return h.smooth(tau - lambda, flow(z, -lambda)); }, 0.0, tau,
        quad.panels, quad.order);
  }
  for (const Impulse& kick : h.impulses) {
    if (kick.time < 0.0 || kick.time > tau) continue;
    total += kick.value(flow(z, -(tau - kick.time)));
  }
  check_finite(total, "s1");
  return total;
}

double compute_s2(const TimeDependentField& h, double tau, const PhasePoint& z,
                  const QuadratureSpec& quad, const FlowMap& flow) {
  validate(h, tau, z, quad);

  // Gradients of the transported pieces at z.
  auto smooth_grad = [&](double lambda) {
    return fd_gradient(
        [&](const PhasePoint& p) { return h.smooth(tau - lambda, flow(p, -lambda)); }, z);
  };
  struct Kick {
    double lag;
    StateVector grad;
  };
  std::vector<Kick> kicks;
  for (const Impulse& k : h.impulses) {
    if (k.time < 0.0 || k.time > tau) continue;
    const double lag = tau - k.time;
    kicks.push_back(
        {lag, fd_gradient([&](const PhasePoint& p) { return k.value(flow(p, -lag)); }, z)});
  }

  double total = 0.0;
  if (h.smooth) {
    std::vector<double> outer_x, outer_w, inner_x, inner_w;
    quad::composite_nodes(0.0, tau, quad.panels, quad.order, outer_x, outer_w);
    for (std::size_t i = 0; i < outer_x.size(); ++i) {
      const double a = outer_x[i];
      const StateVector ga = smooth_grad(a);
      quad::composite_nodes(0.0, a, quad.panels, quad.order, inner_x, inner_w);
      double inner = 0.0;
      for (std::size_t j = 0; j < inner_x.size(); ++j) {
        inner += inner_w[j] * bracket(smooth_grad(inner_x[j]), ga);
      }
      total += outer_w[i] * inner;
    }
    // Mixed terms: a kick at lag l pairs with smooth lags below and above it.
    for (const Kick& k : kicks) {
      if (k.lag > 0.0) {
        total += quad::integrate_composite(
            [&](double b) { return bracket(smooth_grad(b), k.grad); }, 0.0, k.lag,
            quad.panels, quad.order);
      }
      if (k.lag < tau) {
        total += quad::integrate_composite(
            [&](double a) { return bracket(k.grad, smooth_grad(a)); }, k.lag, tau,
            quad.panels, quad.order);
      }
    }
  }
  for (const Kick& first : kicks) {
    for (const Kick& second : kicks) {
      if (first.lag < second.lag) total += bracket(first.grad, second.grad);
    }
  }
  total *= 0.5;
  check_finite(total, "s2");
  return total;
}

ScalarField s1_field(const TimeDependentField& h, double tau, const QuadratureSpec& quad,
                     const FlowMap& flow) {
  return ScalarField("s1", h.dim, [h, tau, quad, flow](const PhasePoint& z) {
    return compute_s1(h, tau, z, quad, flow);
  });
}

}  // namespace shk::coarse
