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

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace shk::quad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Supported orders: 4, 6, 8, 10, 12, 16, 20, 24, 32.
const Rule& gauss_legendre(int order);

using Integrand = std::function<double(double)>;

double integrate_panel(const Integrand& f, double a, double b, const Rule& rule);

// Equal panels, `order` nodes each.
double integrate_composite(const Integrand& f, double a, double b, int panels,
                           int order = 16);

// Nodes and weights of the composite rule, for callers that reuse
// evaluations (nested integrals, cached gradients).
void composite_nodes(double a, double b, int panels, int order, std::vector<double>& nodes,
                     std::vector<double>& weights);

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int order = 10;
  int max_depth = 40;
  int max_subdivisions = 4000;
  // Error floor relative to the integral of |f|; raise it for integrands
  // that carry their own evaluation noise.
  double noise_floor = 1e-14;
};

// Scalar front end of integrate_adaptive_vector. Breakpoints inside (a, b)
// split the interval up front so kinks fall on panel edges.
double integrate_adaptive(const Integrand& f, double a, double b,
                          std::span<const double> breakpoints = {},
                          const AdaptiveOptions& options = {});

}  // namespace shk::quad

namespace shk::quad {

// Globally adaptive rule for a vector-valued integrand: keeps splitting the
// panel with the largest error estimate until the summed estimate meets the
// tolerance (measured against the largest component) or the subdivision
// budget runs out.
template <int N, class F>
Eigen::Matrix<double, N, 1> integrate_adaptive_vector(const F& f, double a, double b,
                                                      std::span<const double> breakpoints = {},
                                                      const AdaptiveOptions& options = {}) {
  using V = Eigen::Matrix<double, N, 1>;
  if (a == b) return V::Zero();
  if (a > b) return -integrate_adaptive_vector<N>(f, b, a, breakpoints, options);
  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const Rule& rule = gauss_legendre(options.order);
  // Also returns the integral of |f| over the panel, the scale of rounding.
  auto panel = [&](double lo, double hi, double& magnitude) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    V sum = V::Zero();
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const V value = f(mid + half * rule.nodes[i]);
      sum += rule.weights[i] * value;
      abs_sum += rule.weights[i] * value.cwiseAbs().maxCoeff();
    }
    magnitude = half * abs_sum;
    return V(half * sum);
  };
  struct Piece {
    double lo, hi;
    V left, right;
    double err, magnitude;
    int depth;
  };
  auto make = [&](double lo, double hi, const V& whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    double m_left = 0.0, m_right = 0.0;
    Piece p{lo, hi, panel(lo, mid, m_left), panel(mid, hi, m_right), 0.0, 0.0, depth};
    p.err = (p.left + p.right - whole).cwiseAbs().maxCoeff();
    p.magnitude = m_left + m_right;
    return p;
  };
  auto by_error = [](const Piece& x, const Piece& y) { return x.err < y.err; };
  std::vector<Piece> heap;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double unused = 0.0;
    heap.push_back(make(edges[i], edges[i + 1], panel(edges[i], edges[i + 1], unused), 0));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);
  V total = V::Zero();
  double err_total = 0.0, magnitude = 0.0;
  for (const auto& p : heap) {
    total += p.left + p.right;
    err_total += p.err;
    magnitude += p.magnitude;
  }
  for (int split = 0; split < options.max_subdivisions; ++split) {
    // A cancelling integrand cannot beat the rounding of its own magnitude.
    const double tol = std::max({options.abs_tol, options.rel_tol * total.cwiseAbs().maxCoeff(),
                                 options.noise_floor * magnitude});
    if (err_total <= tol) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Piece worst = heap.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.depth >= options.max_depth || mid <= worst.lo || mid >= worst.hi) {
      // Cannot refine further; freeze it by zeroing its error.
      heap.back().err = 0.0;
      err_total -= worst.err;
      std::push_heap(heap.begin(), heap.end(), by_error);
      continue;
    }
    heap.pop_back();
    total -= worst.left + worst.right;
    err_total -= worst.err;
    magnitude -= worst.magnitude;
    for (const Piece& child : {make(worst.lo, mid, worst.left, worst.depth + 1),
                               make(mid, worst.hi, worst.right, worst.depth + 1)}) {
      total += child.left + child.right;
      err_total += child.err;
      magnitude += child.magnitude;
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
  }
  return total;
}

}  // namespace shk::quad
