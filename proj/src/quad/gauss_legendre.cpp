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

#include "shk/quad/gauss_legendre.hpp"

#include "shk/common.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace shk::quad {

namespace {

template <int N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  // Boost stores the non-negative half; mirror it.
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  static const Rule r4 = make_rule<4>(), r6 = make_rule<6>(), r8 = make_rule<8>(),
                    r10 = make_rule<10>(), r12 = make_rule<12>(), r16 = make_rule<16>(),
                    r20 = make_rule<20>(), r24 = make_rule<24>(), r32 = make_rule<32>();
  switch (order) {
    case 4: return r4;
    case 6: return r6;
    case 8: return r8;
    case 10: return r10;
    case 12: return r12;
    case 16: return r16;
    case 20: return r20;
    case 24: return r24;
    case 32: return r32;
    default:
      throw DomainError("unsupported Gauss-Legendre order " + std::to_string(order));
  }
}

double integrate_panel(const Integrand& f, double a, double b, const Rule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double integrate_composite(const Integrand& f, double a, double b, int panels, int order) {
  if (panels < 1) throw DomainError("composite rule needs at least one panel");
  const Rule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += integrate_panel(f, a + p * width, a + (p + 1) * width, rule);
  }
  return sum;
}

void composite_nodes(double a, double b, int panels, int order, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  if (panels < 1) throw DomainError("composite rule needs at least one panel");
  const Rule& rule = gauss_legendre(order);
  nodes.clear();
  weights.clear();
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(lo + half * (1.0 + rule.nodes[i]));
      weights.push_back(half * rule.weights[i]);
    }
  }
}

double integrate_adaptive(const Integrand& f, double a, double b,
                          std::span<const double> breakpoints, const AdaptiveOptions& options) {
  using V = Eigen::Matrix<double, 1, 1>;
  const V total = integrate_adaptive_vector<1>(
      [&](double x) { return V(f(x)); }, a, b, breakpoints, options);
  return total[0];
}

}  // namespace shk::quad
