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

#ifndef LDP_QUADRATURE_HPP_
#define LDP_QUADRATURE_HPP_

#include <functional>
#include <span>

namespace ldp {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 52;
};

// Adaptive Gauss-Kronrod (G7, K15) panel integration of f over [a, b].
// Endpoints may be +-infinity; infinite tails are mapped to [0, 1) by the
// rational substitution x = a + t/(1-t) (and its mirror), whose Kronrod
// nodes never touch the singular endpoint.
//
// `breakpoints` are abscissae where the integrand may have kinks (interval
// endpoints, score sign changes); panels are split there before adapting.
// Throws std::runtime_error when the error estimate cannot reach abs_tol.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {},
                 std::span<const double> breakpoints = {});

}  // namespace ldp

#endif  // LDP_QUADRATURE_HPP_
