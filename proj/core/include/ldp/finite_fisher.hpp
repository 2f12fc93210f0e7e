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

#ifndef LDP_FINITE_FISHER_HPP_
#define LDP_FINITE_FISHER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "ldp/channel.hpp"
#include "ldp/staircase.hpp"

namespace ldp {

inline constexpr double kScoreCenteringTol = 1e-10;
// The linear program has 2^d columns; d is capped separately from the
// staircase cap so the simplex stays cheap.
inline constexpr int kLpAlphabetCap = 12;

// A one-parameter finite model frozen at theta_0: the probability vector
// p_{theta_0}(x) together with the scalar score s_{theta_0}(x).
// The score must be centered: sum_x s(x) p0(x) = 0 within 1e-10.
class FiniteModel {
 public:
  FiniteModel(std::vector<double> p0, std::vector<double> score);

  int size() const { return static_cast<int>(p0_.size()); }
  double p0(int x) const { return p0_[x]; }
  double score(int x) const { return score_[x]; }
  const std::vector<double>& p0() const { return p0_; }
  const std::vector<double>& score() const { return score_; }

  // Fisher information of the private variable, sum p0 s^2.
  double FisherInformation() const;
  // E|s|, the quantity entering every closed-form bound.
  double MeanAbsScore() const;
  // Mass of the positive-score region {x : s(x) > 0}.
  double NMax() const;
  bool ScoreNowhereZero() const;

 private:
  std::vector<double> p0_;
  std::vector<double> score_;
};

// Density of the public variable: p~(z) = sum_x p0(x) q_x(z).
std::vector<double> PrivatizedDensity(const FiniteModel& model,
                                      const Channel& channel);

// Score of the public variable, t(z) = sum_x s(x) q_x(z) p0(x) / p~(z).
// Outputs with zero mass carry t = 0 (they are dropped from the alphabet).
std::vector<double> PrivatizedScore(const FiniteModel& model,
                                    const Channel& channel);

// Fisher information of the privatized model, sum_z p~(z) t(z)^2.
double FisherInfo(const FiniteModel& model, const Channel& channel);

// Lazy view of the utility coefficients i_beta of the staircase linear
// program, plus the level-set masses n_beta^+. i_0 and i_{2^d-1} are exactly
// zero because the centered score integrates to zero over the full alphabet.
class UtilityVector {
 public:
  UtilityVector(const FiniteModel& model, double alpha,
                int cap = kDefaultAlphabetCap);

  double alpha() const { return alpha_; }
  int d() const { return d_; }
  std::uint64_t num_patterns() const { return std::uint64_t{1} << d_; }

  // integral of s p0 over F_beta^+.
  double Numerator(std::uint64_t beta) const;
  // n_beta^+ = P_{theta_0}(F_beta^+).
  double NPlus(std::uint64_t beta) const;
  double I(std::uint64_t beta) const;

 private:
  int d_;
  double alpha_;
  double exp_alpha_;
  std::vector<double> score_mass_;  // s(x) p0(x)
  std::vector<double> p0_;
};

UtilityVector MakeUtilityVector(const FiniteModel& model, double alpha,
                                int cap = kDefaultAlphabetCap);

// Outcome of maximizing Fisher information over alpha-LDP mechanisms.
struct MaxInfoResult {
  double m_star = 0.0;  // optimum of the linear program
  double i_max = 0.0;   // (e^alpha - 1)^2 * m_star
  std::vector<std::pair<std::uint64_t, double>> omega;  // optimal weights
  std::vector<std::uint64_t> support;  // pattern indices with positive weight
  double n_max = 0.0;
  // Whether the small-alpha regime was certified: the LP optimum and the
  // closed form agree within 1e-9 relative slack.
  bool alpha_bar_check = false;
};

// Solves max omega^T i subject to R omega = 1, omega >= 0 with a primal
// simplex over the 2^d staircase columns (generated lazily).
MaxInfoResult SolveLp(const FiniteModel& model, double alpha,
                      int lp_cap = kLpAlphabetCap);

// Closed-form optimum valid for alpha below the model-dependent threshold:
// I_max = (e^a-1)^2/4 * E|s|^2 / ([(1-n)+e^a n][n+(1-n)e^a]), n = n_max.
// Requires s(x) != 0 for every x; use SolveLp otherwise.
MaxInfoResult ClosedFormMax(const FiniteModel& model, double alpha,
                            int lp_cap = kLpAlphabetCap);

// Sufficient condition from the two-point-support argument:
// e^alpha * (second largest squared numerator) < (max squared numerator).
// True guarantees the utility maximum sits on {beta_max, beta'_max}.
bool SmallAlphaCondition(const FiniteModel& model, double alpha);

// The binary channel splitting the alphabet by score sign with likelihood
// ratios e^{+-alpha}; attains ClosedFormMax. Output 0 is the symbol favored
// on {s > 0}.
Channel OptimalTwoPointChannel(const FiniteModel& model, double alpha);

}  // namespace ldp

#endif  // LDP_FINITE_FISHER_HPP_
