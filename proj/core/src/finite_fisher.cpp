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

#include "ldp/finite_fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldp/simplex.hpp"

namespace ldp {

FiniteModel::FiniteModel(std::vector<double> p0, std::vector<double> score)
    : p0_(std::move(p0)), score_(std::move(score)) {
  if (p0_.empty() || p0_.size() != score_.size()) {
    throw std::invalid_argument("model needs matching non-empty p0 and score");
  }
  double mass = 0.0, center = 0.0;
  for (std::size_t x = 0; x < p0_.size(); ++x) {
    if (!(p0_[x] >= 0.0)) {
      throw std::invalid_argument("p0 has a negative entry");
    }
    mass += p0_[x];
    center += p0_[x] * score_[x];
  }
  if (std::abs(mass - 1.0) > kRowSumTol) {
    throw std::invalid_argument("p0 sums to " + std::to_string(mass) +
                                ", not 1");
  }
  if (std::abs(center) > kScoreCenteringTol) {
    throw std::invalid_argument("score is not centered: E[s] = " +
                                std::to_string(center));
  }
}

double FiniteModel::FisherInformation() const {
  double info = 0.0;
  for (std::size_t x = 0; x < p0_.size(); ++x) {
    info += p0_[x] * score_[x] * score_[x];
  }
  return info;
}

double FiniteModel::MeanAbsScore() const {
  double m = 0.0;
  for (std::size_t x = 0; x < p0_.size(); ++x) m += p0_[x] * std::abs(score_[x]);
  return m;
}

double FiniteModel::NMax() const {
  double n = 0.0;
  for (std::size_t x = 0; x < p0_.size(); ++x) {
    if (score_[x] > 0.0) n += p0_[x];
  }
  return n;
}

bool FiniteModel::ScoreNowhereZero() const {
  return std::none_of(score_.begin(), score_.end(),
                      [](double s) { return s == 0.0; });
}

std::vector<double> PrivatizedDensity(const FiniteModel& model,
                                      const Channel& channel) {
  if (channel.input_size() != model.size()) {
    throw std::invalid_argument("channel input size != model alphabet size");
  }
  return PushForward(channel, model.p0());
}

std::vector<double> PrivatizedScore(const FiniteModel& model,
                                    const Channel& channel) {
  const std::vector<double> ptilde = PrivatizedDensity(model, channel);
  const int l = channel.output_size();
  std::vector<double> t(l, 0.0);
  for (int z = 0; z < l; ++z) {
    if (ptilde[z] <= 0.0) continue;  // dead output, dropped
    double num = 0.0;
    for (int x = 0; x < model.size(); ++x) {
      num += model.score(x) * channel.at(x, z) * model.p0(x);
    }
    t[z] = num / ptilde[z];
  }
  return t;
}

double FisherInfo(const FiniteModel& model, const Channel& channel) {
  const std::vector<double> ptilde = PrivatizedDensity(model, channel);
  const std::vector<double> t = PrivatizedScore(model, channel);
  double info = 0.0;
  for (std::size_t z = 0; z < ptilde.size(); ++z) {
    info += ptilde[z] * t[z] * t[z];
  }
  return info;
}

UtilityVector::UtilityVector(const FiniteModel& model, double alpha, int cap)
    : d_(model.size()),
      alpha_(alpha),
      exp_alpha_(std::exp(alpha)),
      p0_(model.p0()) {
  if (d_ > cap) {
    throw std::invalid_argument("alphabet size exceeds the utility cap");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  score_mass_.resize(d_);
  for (int x = 0; x < d_; ++x) score_mass_[x] = model.score(x) * model.p0(x);
}

double UtilityVector::Numerator(std::uint64_t beta) const {
  double num = 0.0;
  for (int j = 0; j < d_; ++j) {
    if ((beta >> j) & 1u) num += score_mass_[j];
  }
  return num;
}

double UtilityVector::NPlus(std::uint64_t beta) const {
  double n = 0.0;
  for (int j = 0; j < d_; ++j) {
    if ((beta >> j) & 1u) n += p0_[j];
  }
  return n;
}

double UtilityVector::I(std::uint64_t beta) const {
  if (beta >= num_patterns()) {
    throw std::invalid_argument("pattern index out of range");
  }
  // F+ empty or F+ = X: the centered numerator vanishes identically.
  if (beta == 0 || beta == num_patterns() - 1) return 0.0;
  const double num = Numerator(beta);
  return num * num / (1.0 + (exp_alpha_ - 1.0) * NPlus(beta));
}

UtilityVector MakeUtilityVector(const FiniteModel& model, double alpha,
                                int cap) {
  return UtilityVector(model, alpha, cap);
}

namespace {

// I_max of the closed form; valid for every alpha as an expression, optimal
// for alpha below the model threshold.
double ClosedFormValue(const FiniteModel& model, double alpha) {
  const double ea = std::exp(alpha);
  const double n = model.NMax();
  const double mean_abs = model.MeanAbsScore();
  const double denom = ((1.0 - n) + ea * n) * (n + (1.0 - n) * ea);
  return (ea - 1.0) * (ea - 1.0) / 4.0 * mean_abs * mean_abs / denom;
}

MaxInfoResult SolveLpRaw(const FiniteModel& model, double alpha, int lp_cap) {
  const int d = model.size();
  if (d > lp_cap) {
    throw std::invalid_argument("alphabet size " + std::to_string(d) +
                                " exceeds LP cap " + std::to_string(lp_cap));
  }
  const UtilityVector util(model, alpha, lp_cap);

  MaxInfoResult result;
  result.n_max = model.NMax();

  if (alpha == 0.0) {
    // R degenerates to the all-ones matrix: any probability vector omega is
    // feasible, so M* = max_beta i_beta, attained on the positive-score set.
    std::uint64_t best = 0;
    double best_i = 0.0;
    for (std::uint64_t beta = 0; beta < util.num_patterns(); ++beta) {
      const double i = util.I(beta);
      if (i > best_i) {
        best_i = i;
        best = beta;
      }
    }
    result.m_star = best_i;
    result.i_max = 0.0;
    result.omega = {{best, 1.0}};
    result.support = {best};
    return result;
  }

  const double ea = std::exp(alpha);
  SimplexProblem problem;
  problem.num_rows = d;
  problem.num_columns = util.num_patterns();
  problem.rhs.assign(d, 1.0);
  problem.column = [d, ea](std::uint64_t beta, std::span<double> out) {
    for (int j = 0; j < d; ++j) out[j] = ((beta >> j) & 1u) ? ea : 1.0;
  };
  problem.cost = [&util](std::uint64_t beta) { return util.I(beta); };
  // Degenerate but valid starting basis: the all-ones pattern carries weight
  // one, the d-1 singleton patterns complete it to an invertible matrix.
  problem.initial_basis.push_back(0);
  for (int j = 1; j < d; ++j) {
    problem.initial_basis.push_back(std::uint64_t{1} << j);
  }

  const SimplexSolution sol = SolveSimplex(problem);
  result.m_star = sol.objective;
  result.i_max = (ea - 1.0) * (ea - 1.0) * sol.objective;
  result.omega = sol.solution;
  for (const auto& [beta, w] : sol.solution) result.support.push_back(beta);

  // Feasibility cannot fail (omega_0 = 1 is always feasible); re-assert the
  // constraint residual to catch solver bugs.
  for (int j = 0; j < d; ++j) {
    double row = 0.0;
    for (const auto& [beta, w] : result.omega) {
      row += w * (((beta >> j) & 1u) ? ea : 1.0);
    }
    if (std::abs(row - 1.0) > 1e-9) {
      throw std::runtime_error("simplex returned an infeasible omega");
    }
  }
  return result;
}

}  // namespace

bool SmallAlphaCondition(const FiniteModel& model, double alpha) {
  if (!model.ScoreNowhereZero()) return false;
  // Over subsets other than {s>0} and {s<0}, the largest |integral of s p0|
  // is the maximum minus the smallest single-symbol contribution.
  double num_max = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  for (int x = 0; x < model.size(); ++x) {
    const double a = model.score(x) * model.p0(x);
    if (a > 0.0) num_max += a;
    min_abs = std::min(min_abs, std::abs(a));
  }
  const double num3 = num_max - min_abs;
  return std::exp(alpha) * num3 * num3 < num_max * num_max;
}

MaxInfoResult SolveLp(const FiniteModel& model, double alpha, int lp_cap) {
  MaxInfoResult result = SolveLpRaw(model, alpha, lp_cap);
  if (model.ScoreNowhereZero()) {
    const double closed = ClosedFormValue(model, alpha);
    result.alpha_bar_check =
        std::abs(result.i_max - closed) <= 1e-9 * (1.0 + closed);
  }
  return result;
}

MaxInfoResult ClosedFormMax(const FiniteModel& model, double alpha,
                            int lp_cap) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!model.ScoreNowhereZero()) {
    throw std::invalid_argument(
        "closed form needs s(x) != 0 at every symbol; use SolveLp");
  }
  const int d = model.size();
  if (d > kDefaultAlphabetCap) {
    throw std::invalid_argument("alphabet size exceeds the staircase cap");
  }
  const double ea = std::exp(alpha);

  std::uint64_t beta_max = 0;
  for (int x = 0; x < d; ++x) {
    if (model.score(x) > 0.0) beta_max |= std::uint64_t{1} << x;
  }
  const std::uint64_t beta_max_prime =
      ((std::uint64_t{1} << d) - 1) ^ beta_max;

  MaxInfoResult result;
  result.n_max = model.NMax();
  result.i_max = ClosedFormValue(model, alpha);
  result.m_star = result.i_max == 0.0 ? model.MeanAbsScore() * model.MeanAbsScore() / 4.0
                                      : result.i_max / ((ea - 1.0) * (ea - 1.0));
  const double w = 1.0 / (1.0 + ea);
  result.support = {std::min(beta_max, beta_max_prime),
                    std::max(beta_max, beta_max_prime)};
  result.omega = {{result.support[0], w}, {result.support[1], w}};
  if (d <= lp_cap) {
    const MaxInfoResult lp = SolveLpRaw(model, alpha, lp_cap);
    result.alpha_bar_check =
        std::abs(lp.i_max - result.i_max) <= 1e-9 * (1.0 + result.i_max);
  } else {
    result.alpha_bar_check = SmallAlphaCondition(model, alpha);
  }
  return result;
}

Channel OptimalTwoPointChannel(const FiniteModel& model, double alpha) {
  if (!model.ScoreNowhereZero()) {
    throw std::invalid_argument(
        "two-point channel undefined when the score vanishes at a symbol");
  }
  const int d = model.size();
  const double ea = std::exp(alpha);
  const double hi = ea / (1.0 + ea);
  const double lo = 1.0 / (1.0 + ea);
  std::vector<double> kernel(static_cast<std::size_t>(d) * 2);
  for (int x = 0; x < d; ++x) {
    const bool positive = model.score(x) > 0.0;
    kernel[static_cast<std::size_t>(x) * 2] = positive ? hi : lo;
    kernel[static_cast<std::size_t>(x) * 2 + 1] = positive ? lo : hi;
  }
  return Channel(d, 2, std::move(kernel));
}

}  // namespace ldp
