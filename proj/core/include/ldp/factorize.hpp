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

#ifndef LDP_FACTORIZE_HPP_
#define LDP_FACTORIZE_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ldp/channel.hpp"
#include "ldp/staircase.hpp"

namespace ldp {

// Tolerance for the normalization identity sum_beta omega_beta r_beta(x) = 1.
inline constexpr double kFactorizationNormTol = 1e-10;
// Convex weights below this floor are pruned and the mass renormalized over
// the survivors, so product mode cannot return 2^d-size noise supports.
inline constexpr double kWeightFloor = 1e-14;

// How a point of [1, e^alpha]^d is written as a convex combination of
// vertices. Product mode is the exact closed form with up to 2^d atoms;
// sparse mode peels vertices greedily and returns at most d+1 atoms.
// The decomposition is not unique; both are valid witnesses.
enum class DecomposeMode { kProduct, kSparse };

struct VertexWeight {
  std::uint64_t beta = 0;
  double weight = 0.0;
};

// Column minima q_(z) = min_x q_x(z).
std::vector<double> MinMass(const Channel& channel);

// u_x(z) = q_x(z) / q_(z), with u = 1 on zero-mass columns. Row-major d x l.
// Throws if some value falls outside [1, e^alpha] beyond the LDP slack.
std::vector<double> NormalizedRatios(const Channel& channel, double alpha);

// Convex weights c over staircase patterns with sum_beta c_beta r_beta = u,
// sum c = 1, c >= 0. `u` must lie in [1, e^alpha]^d.
std::vector<VertexWeight> VertexDecompose(std::span<const double> u,
                                          double alpha, DecomposeMode mode);

// The witness produced by the factorization of an alpha-LDP channel q into an
// extremal first stage q1 (q1_x(beta) = omega_beta r_beta(x)) followed by a
// post-randomization q2, with Compose(q1, q2) == q.
//
// Indices with omega_beta == 0 are omitted from the support, so q1's output
// alphabet is exactly `support` (column k of q1 is pattern support[k]).
struct ExtremalFactorization {
  double alpha = 0.0;
  std::vector<std::uint64_t> support;                // sorted pattern indices
  std::vector<std::pair<std::uint64_t, double>> omega;  // aligned with support
  Channel q1;                                        // d -> |support|
  Channel q2;                                        // |support| -> l
  std::vector<double> min_mass;                      // q_(z) per output z
  // c_{z,beta} per original output z (sparse, beta ascending).
  std::vector<std::vector<VertexWeight>> coefficients;

  double OmegaMass() const {
    double s = 0.0;
    for (const auto& [beta, w] : omega) s += w;
    return s;
  }
};

ExtremalFactorization Factorize(const Channel& channel, double alpha,
                                DecomposeMode mode = DecomposeMode::kSparse);

}  // namespace ldp

#endif  // LDP_FACTORIZE_HPP_
