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

#ifndef LDP_CONTINUOUS_HPP_
#define LDP_CONTINUOUS_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "ldp/quadrature.hpp"

namespace ldp {

// Grid tolerance for the extremal-measure normalization identity.
inline constexpr double kMeasureNormTol = 1e-8;
// Beyond this the measure is rejected outright by Fisher evaluations.
inline constexpr double kMeasureNormHardTol = 1e-6;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Finite union of disjoint half-open intervals [a_k, b_k), kept sorted.
// Endpoints may be +-infinity. Membership is a binary search.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Overlapping or touching input intervals are merged.
  explicit IntervalSet(std::vector<Interval> intervals);

  bool Contains(double x) const;
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  // Complement within [lo, hi).
  IntervalSet ComplementWithin(double lo, double hi) const;

  // All finite endpoints; used as quadrature breakpoints.
  std::vector<double> FiniteEndpoints() const;

 private:
  std::vector<Interval> intervals_;
};

// An extremal point of { v : 1 <= v <= e^alpha }: the piecewise-constant
// function r(x) = 1 + (e^alpha - 1) 1_{F+}(x). Every representable r is
// piecewise constant, so every non-endpoint x is a Lebesgue point and plain
// pointwise evaluation is exact almost everywhere.
class ExtremalFunction {
 public:
  ExtremalFunction(double alpha, IntervalSet f_plus);

  double alpha() const { return alpha_; }
  double exp_alpha() const { return exp_alpha_; }
  const IntervalSet& f_plus() const { return f_plus_; }

  double operator()(double x) const {
    return f_plus_.Contains(x) ? exp_alpha_ : 1.0;
  }

 private:
  double alpha_;
  double exp_alpha_;
  IntervalSet f_plus_;
};

// A finitely supported measure sum_k w_k delta_{r_k} on the extremal set.
// Feasible mechanisms satisfy sum_k w_k r_k(x) = 1 on the model support,
// which bounds the total mass into [e^-alpha, 1].
class ExtremalMeasure {
 public:
  ExtremalMeasure(double alpha,
                  std::vector<std::pair<ExtremalFunction, double>> atoms);

  double alpha() const { return alpha_; }
  const std::vector<std::pair<ExtremalFunction, double>>& atoms() const {
    return atoms_;
  }
  double TotalMass() const;

  struct NormalizationCheck {
    double worst_deviation = 0.0;
    double worst_x = 0.0;
  };
  // Evaluates |sum w_k r_k(x) - 1| on `grid_points` mapped points of the
  // domain plus every atom endpoint nudged by +-epsilon. Piecewise-constant
  // functions can only violate the constraint on whole pieces, so endpoint
  // probes catch every violation the grid could miss.
  NormalizationCheck CheckNormalization(Interval domain,
                                        int grid_points = 10000) const;

 private:
  double alpha_;
  std::vector<std::pair<ExtremalFunction, double>> atoms_;
};

// One-dimensional model frozen at theta_0, carrying callables for the
// density and the centered score plus the quadrature scheme used throughout.
class ContinuousModel {
 public:
  // Validates: integral of p is 1, integral of s p is 0 (both within
  // 100 * abs_tol), and integral of s^2 p is finite.
  ContinuousModel(Interval support, std::function<double(double)> density,
                  std::function<double(double)> score,
                  QuadratureOptions quadrature = {},
                  std::vector<double> kinks = {});

  static ContinuousModel Gaussian(QuadratureOptions quadrature = {});
  // Density and score both piecewise linear on the given knots (density 0
  // outside). Used by the custom-piecewise CLI model.
  static ContinuousModel PiecewiseLinear(std::vector<double> knots,
                                         std::vector<double> density_values,
                                         std::vector<double> score_values,
                                         QuadratureOptions quadrature = {});

  const Interval& support() const { return support_; }
  double density(double x) const { return density_(x); }
  double score(double x) const { return score_(x); }
  const QuadratureOptions& quadrature() const { return quad_; }

  // P_{theta_0}(F) for an interval set F.
  double ProbabilityOf(const IntervalSet& f) const;
  // integral of s p over F.
  double ScoreMassOf(const IntervalSet& f) const;
  // E|s|; kinks at score sign changes are panel boundaries.
  double MeanAbsScore() const;

  // {x : s(x) > 0} as an interval set, located by scan plus bisection.
  // Throws if the sign structure needs more than max_sign_changes pieces.
  IntervalSet PositiveScoreSet(int max_sign_changes = 32) const;

 private:
  Interval support_;
  std::function<double(double)> density_;
  std::function<double(double)> score_;
  QuadratureOptions quad_;
  std::vector<double> kinks_;  // known non-smooth abscissae of p or s
};

// p~(r) = 1 + (e^alpha - 1) P(F+), the density of the public view at r.
double TildeDensity(const ContinuousModel& model, const ExtremalFunction& r);

// t(r) = (e^alpha - 1) * (integral of s p over F+) / p~(r).
double TildeScore(const ContinuousModel& model, const ExtremalFunction& r);

// Fisher information of the privatized model under the extremal mechanism:
// (e^alpha - 1)^2 sum_k w_k (integral of s p over F_k+)^2 / p~(r_k).
// Rejects measures violating normalization beyond kMeasureNormHardTol.
double FisherInfoExtremal(const ContinuousModel& model,
                          const ExtremalMeasure& mu);

// Lower and upper bounds on the optimal Fisher information at budget alpha:
//   lower = (e^a-1)^2 / (2 e^a (1+e^a)) * E|s|^2
//   upper = (e^a-1)^2 / 4 * E|s|^2
std::pair<double, double> InfoBounds(const ContinuousModel& model,
                                     double alpha);

// The two-atom measure mu = (delta_{r1} + delta_{r2}) / (1 + e^alpha) with
// r1 on {s > 0} and r2 on its complement; optimal as alpha -> 0.
ExtremalMeasure TwoPointMechanism(const ContinuousModel& model, double alpha,
                                  int max_sign_changes = 32);

}  // namespace ldp

#endif  // LDP_CONTINUOUS_HPP_
