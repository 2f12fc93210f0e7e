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

#ifndef LDP_CHANNEL_HPP_
#define LDP_CHANNEL_HPP_

#include <optional>
#include <span>
#include <vector>

#include "ldp/rng.hpp"

namespace ldp {

// Numerical tolerances, one order looser per division performed:
// row sums are plain additions, the LDP ratio divides once, extremality
// divides ratios of possibly small probabilities.
inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kLdpSlackTol = 1e-10;
inline constexpr double kExtremalRatioTol = 1e-8;

// A finite randomization mechanism: row-stochastic d x l matrix of
// conditional probabilities q_x(z). Immutable after construction and safe to
// share across threads.
class Channel {
 public:
  // `kernel` is row-major with d rows of length l. Every entry must be >= 0
  // and every row must sum to 1 within kRowSumTol.
  Channel(int d, int l, std::vector<double> kernel);

  static Channel Identity(int d);

  int input_size() const { return d_; }
  int output_size() const { return l_; }

  double at(int x, int z) const { return kernel_[static_cast<std::size_t>(x) * l_ + z]; }
  std::span<const double> row(int x) const {
    return {kernel_.data() + static_cast<std::size_t>(x) * l_,
            static_cast<std::size_t>(l_)};
  }
  const std::vector<double>& kernel() const { return kernel_; }

 private:
  int d_;
  int l_;
  std::vector<double> kernel_;
};

struct LdpWitness {
  int z = -1;      // output symbol attaining the worst likelihood ratio
  int x_max = -1;  // argmax_x q_x(z)
  int x_min = -1;  // argmin_x q_x(z)
};

// Result of auditing a channel against a privacy budget.
//
// alpha_effective is the exact log of the worst likelihood ratio, +infinity
// when some output has zero mass under part of the inputs only. Outputs with
// zero mass under every input are legal but removable; they are listed, not
// treated as violations.
struct LdpCertificate {
  double alpha_effective = 0.0;
  bool is_extremal = false;
  std::optional<LdpWitness> witness;
  std::vector<int> removable_outputs;

  bool Satisfies(double alpha) const {
    return alpha_effective <= alpha + kLdpSlackTol;
  }
};

// Smallest alpha' such that the channel is alpha'-LDP, with witness, plus an
// extremality check at the queried budget.
LdpCertificate VerifyLdp(const Channel& channel, double alpha);

// True iff every per-output likelihood ratio q_x(z)/q_x'(z) is within tol of
// one of {e^-alpha, 1, e^alpha}. Zero columns count as extremal (removable).
bool IsExtremal(const Channel& channel, double alpha,
                double tol = kExtremalRatioTol);

// Sequential application: (first: d->m) then (second: m->l).
// The result kernel is the matrix product of the two kernels.
Channel Compose(const Channel& first, const Channel& second);

// Output distribution of the channel under input distribution p.
std::vector<double> PushForward(const Channel& channel,
                                std::span<const double> p);

// Draws one output symbol from row x. Deterministic given the stream state.
int Sample(const Channel& channel, int x, RngStream& rng);

}  // namespace ldp

#endif  // LDP_CHANNEL_HPP_
