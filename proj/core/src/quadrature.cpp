// Copyright 2026 The ldp-staircase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ldp {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK values).
constexpr double kNodes[8] = {
    0.0,
    0.2077849550078984676007, 0.4058451513773971669066,
    0.5860872354676911302941, 0.7415311855993944398639,
    0.8648644233597690727897, 0.9491079123427585245262,
    0.9914553711208126392069};
constexpr double kKronrodW[8] = {
    0.2094821410847278280130,
    0.2044329400752988924142, 0.1903505780647854099133,
    0.1690047266392679028266, 0.1406532597155259187452,
    0.1047900103222501838399, 0.0630920926299785532907,
    0.0229353220105292249637};
// Gauss weights sit on the odd Kronrod nodes (index 0, 2, 4, 6).
constexpr double kGaussW[4] = {
    0.4179591836734693877551, 0.3818300505051189449504,
    0.2797053914892766679015, 0.1294849661688696932706};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
PanelEstimate GaussKronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(center);
  double k15 = kKronrodW[0] * f0;
  double g7 = kGaussW[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    k15 += kKronrodW[i] * fsum;
    if (i % 2 == 0) g7 += kGaussW[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  const double diff = std::abs(k15 - g7);
  // QUADPACK-style rescaled estimate; the raw difference is kept as a cap.
  const double scaled = std::pow(200.0 * diff, 1.5);
  return {k15, std::min(diff, scaled)};
}

template <typename F>
double AdaptivePanel(const F& f, double a, double b, double tol, int depth,
                     int max_depth) {
  const PanelEstimate est = GaussKronrod(f, a, b);
  if (est.error <= tol || !(std::isfinite(est.value))) {
    if (!std::isfinite(est.value)) {
      throw std::runtime_error("quadrature: integrand is not finite");
    }
    return est.value;
  }
  if (depth >= max_depth) {
    throw std::runtime_error("quadrature: failed to converge to tolerance");
  }
  const double mid = 0.5 * (a + b);
  return AdaptivePanel(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
         AdaptivePanel(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

double FinitePiece(const std::function<double(double)>& f, double a, double b,
                   double tol, int max_depth) {
  if (a == b) return 0.0;
  return AdaptivePanel(f, a, b, tol, 0, max_depth);
}

// Integral over [a, +inf) via x = a + t/(1-t), dx = dt/(1-t)^2.
double UpperTail(const std::function<double(double)>& f, double a, double tol,
                 int max_depth) {
  auto g = [&f, a](double t) {
    const double inv = 1.0 / (1.0 - t);
    return f(a + t * inv) * inv * inv;
  };
  return AdaptivePanel(g, 0.0, 1.0, tol, 0, max_depth);
}

// Integral over (-inf, b] via x = b - t/(1-t).
double LowerTail(const std::function<double(double)>& f, double b, double tol,
                 int max_depth) {
  auto g = [&f, b](double t) {
    const double inv = 1.0 / (1.0 - t);
    return f(b - t * inv) * inv * inv;
  };
  return AdaptivePanel(g, 0.0, 1.0, tol, 0, max_depth);
}

}  // namespace

double Integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options,
                 std::span<const double> breakpoints) {
  if (!(a <= b)) throw std::invalid_argument("quadrature: requires a <= b");
  if (a == b) return 0.0;

  std::vector<double> cuts;
  for (double c : breakpoints) {
    if (std::isfinite(c) && c > a && c < b) cuts.push_back(c);
  }
  // An unbounded piece on both sides needs at least one finite cut.
  if (std::isinf(a) && std::isinf(b) && cuts.empty()) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges;
  edges.push_back(a);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(b);

  const double tol = options.abs_tol / static_cast<double>(edges.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (std::isinf(lo)) {
      total += LowerTail(f, hi, tol, options.max_depth);
    } else if (std::isinf(hi)) {
      total += UpperTail(f, lo, tol, options.max_depth);
    } else {
      total += FinitePiece(f, lo, hi, tol, options.max_depth);
    }
  }
  return total;
}

}  // namespace ldp
