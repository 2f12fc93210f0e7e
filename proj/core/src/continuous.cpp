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

#include "ldp/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maps t in (-1, 1) onto the (possibly unbounded) domain, dense near any
// finite part and reaching far into infinite tails.
double MapToDomain(Interval domain, double t) {
  const bool lo_inf = std::isinf(domain.lo);
  const bool hi_inf = std::isinf(domain.hi);
  if (lo_inf && hi_inf) return t / (1.0 - t * t);
  if (lo_inf) return domain.hi - (1.0 + t) / (1.0 - t);
  if (hi_inf) return domain.lo + (1.0 + t) / (1.0 - t);
  return domain.lo + 0.5 * (t + 1.0) * (domain.hi - domain.lo);
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const Interval& iv : intervals) {
    if (!(iv.lo <= iv.hi)) {
      throw std::invalid_argument("interval with lo > hi");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : intervals) {
    if (iv.lo == iv.hi) continue;  // empty piece
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool IntervalSet::Contains(double x) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), x,
      [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return x < it->hi;
}

IntervalSet IntervalSet::ComplementWithin(double lo, double hi) const {
  std::vector<Interval> out;
  double cursor = lo;
  for (const Interval& iv : intervals_) {
    const double a = std::max(iv.lo, lo);
    const double b = std::min(iv.hi, hi);
    if (a >= b) continue;
    if (cursor < a) out.push_back({cursor, a});
    cursor = std::max(cursor, b);
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return IntervalSet(std::move(out));
}

std::vector<double> IntervalSet::FiniteEndpoints() const {
  std::vector<double> out;
  for (const Interval& iv : intervals_) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi)) out.push_back(iv.hi);
  }
  return out;
}

ExtremalFunction::ExtremalFunction(double alpha, IntervalSet f_plus)
    : alpha_(alpha), exp_alpha_(std::exp(alpha)), f_plus_(std::move(f_plus)) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
}

ExtremalMeasure::ExtremalMeasure(
    double alpha, std::vector<std::pair<ExtremalFunction, double>> atoms)
    : alpha_(alpha), atoms_(std::move(atoms)) {
  for (const auto& [r, w] : atoms_) {
    if (r.alpha() != alpha_) {
      throw std::invalid_argument("measure atoms carry mismatched alpha");
    }
    if (!(w >= 0.0)) throw std::invalid_argument("atom weight must be >= 0");
  }
}

double ExtremalMeasure::TotalMass() const {
  double m = 0.0;
  for (const auto& [r, w] : atoms_) m += w;
  return m;
}

ExtremalMeasure::NormalizationCheck ExtremalMeasure::CheckNormalization(
    Interval domain, int grid_points) const {
  NormalizationCheck check;
  auto probe = [&](double x) {
    if (!(x >= domain.lo && x < domain.hi)) return;
    double s = 0.0;
    for (const auto& [r, w] : atoms_) s += w * r(x);
    const double dev = std::abs(s - 1.0);
    if (dev > check.worst_deviation) {
      check.worst_deviation = dev;
      check.worst_x = x;
    }
  };
  for (int i = 0; i < grid_points; ++i) {
    const double t = -1.0 + 2.0 * (i + 0.5) / grid_points;
    probe(MapToDomain(domain, t));
  }
  for (const auto& [r, w] : atoms_) {
    for (double e : r.f_plus().FiniteEndpoints()) {
      const double eps = 1e-9 * std::max(1.0, std::abs(e));
      probe(e - eps);
      probe(e + eps);
      probe(e);
    }
  }
  return check;
}

ContinuousModel::ContinuousModel(Interval support,
                                 std::function<double(double)> density,
                                 std::function<double(double)> score,
                                 QuadratureOptions quadrature,
                                 std::vector<double> kinks)
    : support_(support),
      density_(std::move(density)),
      score_(std::move(score)),
      quad_(quadrature),
      kinks_(std::move(kinks)) {
  if (!(support_.lo < support_.hi)) {
    throw std::invalid_argument("support must be a nonempty interval");
  }
  const double validate_tol = 100.0 * quad_.abs_tol;
  const double mass =
      Integrate([this](double x) { return density_(x); }, support_.lo,
                support_.hi, quad_, kinks_);
  if (std::abs(mass - 1.0) > validate_tol) {
    throw std::invalid_argument("density integrates to " +
                                std::to_string(mass) + ", not 1");
  }
  const double center =
      Integrate([this](double x) { return score_(x) * density_(x); },
                support_.lo, support_.hi, quad_, kinks_);
  if (std::abs(center) > validate_tol) {
    throw std::invalid_argument("score is not centered: E[s] = " +
                                std::to_string(center));
  }
  const double second =
      Integrate([this](double x) { return score_(x) * score_(x) * density_(x); },
                support_.lo, support_.hi, quad_, kinks_);
  if (!std::isfinite(second)) {
    throw std::invalid_argument("E[s^2] is not finite");
  }
}

ContinuousModel ContinuousModel::Gaussian(QuadratureOptions quadrature) {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return ContinuousModel(
      {-kInf, kInf},
      [inv_sqrt_2pi](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); },
      [](double x) { return x; }, quadrature, {0.0});
}

ContinuousModel ContinuousModel::PiecewiseLinear(
    std::vector<double> knots, std::vector<double> density_values,
    std::vector<double> score_values, QuadratureOptions quadrature) {
  if (knots.size() < 2 || knots.size() != density_values.size() ||
      knots.size() != score_values.size()) {
    throw std::invalid_argument(
        "piecewise model needs matching knots/density/score arrays (>= 2)");
  }
  if (!std::is_sorted(knots.begin(), knots.end())) {
    throw std::invalid_argument("piecewise knots must be sorted");
  }
  auto interp = [](const std::vector<double>& xs, const std::vector<double>& ys,
                   double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - t) * ys[i - 1] + t * ys[i];
  };
  Interval support{knots.front(), knots.back()};
  return ContinuousModel(
      support,
      [xs = knots, ys = density_values, interp](double x) {
        return std::max(0.0, interp(xs, ys, x));
      },
      [xs = knots, ys = score_values, interp](double x) {
        return interp(xs, ys, x);
      },
      quadrature, knots);
}

double ContinuousModel::ProbabilityOf(const IntervalSet& f) const {
  double total = 0.0;
  for (const Interval& iv : f.intervals()) {
    const double lo = std::max(iv.lo, support_.lo);
    const double hi = std::min(iv.hi, support_.hi);
    if (lo >= hi) continue;
    total += Integrate([this](double x) { return density_(x); }, lo, hi, quad_,
                       kinks_);
  }
  return total;
}

double ContinuousModel::ScoreMassOf(const IntervalSet& f) const {
  double total = 0.0;
  for (const Interval& iv : f.intervals()) {
    const double lo = std::max(iv.lo, support_.lo);
    const double hi = std::min(iv.hi, support_.hi);
    if (lo >= hi) continue;
    total += Integrate([this](double x) { return score_(x) * density_(x); },
                       lo, hi, quad_, kinks_);
  }
  return total;
}

double ContinuousModel::MeanAbsScore() const {
  std::vector<double> cuts = PositiveScoreSet().FiniteEndpoints();
  cuts.insert(cuts.end(), kinks_.begin(), kinks_.end());
  return Integrate(
      [this](double x) { return std::abs(score_(x)) * density_(x); },
      support_.lo, support_.hi, quad_, cuts);
}

IntervalSet ContinuousModel::PositiveScoreSet(int max_sign_changes) const {
  constexpr int kScanPoints = 4096;
  std::vector<double> xs;
  xs.reserve(kScanPoints + kinks_.size());
  for (int i = 1; i < kScanPoints; ++i) {
    xs.push_back(MapToDomain(support_, -1.0 + 2.0 * i / kScanPoints));
  }
  for (double k : kinks_) {
    // Probe both sides of known kinks so sign flips at a knot are not missed.
    if (k > support_.lo && k < support_.hi) {
      xs.push_back(k - 1e-12 * std::max(1.0, std::abs(k)));
      xs.push_back(k + 1e-12 * std::max(1.0, std::abs(k)));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto positive = [this](double x) { return score_(x) > 0.0; };
  std::vector<double> boundaries;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (positive(xs[i]) == positive(xs[i + 1])) continue;
    if (static_cast<int>(boundaries.size()) >= max_sign_changes) {
      throw std::invalid_argument(
          "score changes sign more than " + std::to_string(max_sign_changes) +
          " times; not representable as an interval set");
    }
    double lo = xs[i], hi = xs[i + 1];
    for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
         ++it) {
      const double mid = 0.5 * (lo + hi);
      if (positive(mid) == positive(xs[i])) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    boundaries.push_back(0.5 * (lo + hi));
  }

  std::vector<Interval> pieces;
  double cursor = support_.lo;
  bool cursor_positive = positive(xs.front());
  for (double b : boundaries) {
    if (cursor_positive) pieces.push_back({cursor, b});
    cursor = b;
    cursor_positive = !cursor_positive;
  }
  if (cursor_positive) pieces.push_back({cursor, support_.hi});
  return IntervalSet(std::move(pieces));
}

double TildeDensity(const ContinuousModel& model, const ExtremalFunction& r) {
  return 1.0 + (r.exp_alpha() - 1.0) * model.ProbabilityOf(r.f_plus());
}

double TildeScore(const ContinuousModel& model, const ExtremalFunction& r) {
  return (r.exp_alpha() - 1.0) * model.ScoreMassOf(r.f_plus()) /
         TildeDensity(model, r);
}

double FisherInfoExtremal(const ContinuousModel& model,
                          const ExtremalMeasure& mu) {
  const auto check = mu.CheckNormalization(model.support());
  if (check.worst_deviation > kMeasureNormHardTol) {
    throw std::invalid_argument(
        "extremal measure violates normalization: |sum w r(x) - 1| = " +
        std::to_string(check.worst_deviation) + " at x = " +
        std::to_string(check.worst_x));
  }
  const double ea = std::exp(mu.alpha());
  double info = 0.0;
  for (const auto& [r, w] : mu.atoms()) {
    if (w == 0.0) continue;
    const double num = model.ScoreMassOf(r.f_plus());
    info += w * num * num / TildeDensity(model, r);
  }
  return (ea - 1.0) * (ea - 1.0) * info;
}

std::pair<double, double> InfoBounds(const ContinuousModel& model,
                                     double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  const double ea = std::exp(alpha);
  const double mean_abs = model.MeanAbsScore();
  const double sq = mean_abs * mean_abs;
  const double lower = (ea - 1.0) * (ea - 1.0) / (2.0 * ea * (1.0 + ea)) * sq;
  const double upper = (ea - 1.0) * (ea - 1.0) / 4.0 * sq;
  return {lower, upper};
}

ExtremalMeasure TwoPointMechanism(const ContinuousModel& model, double alpha,
                                  int max_sign_changes) {
  const IntervalSet f_max = model.PositiveScoreSet(max_sign_changes);
  const IntervalSet f_max_prime =
      f_max.ComplementWithin(model.support().lo, model.support().hi);
  const double w = 1.0 / (1.0 + std::exp(alpha));
  std::vector<std::pair<ExtremalFunction, double>> atoms;
  atoms.emplace_back(ExtremalFunction(alpha, f_max), w);
  atoms.emplace_back(ExtremalFunction(alpha, f_max_prime), w);
  return ExtremalMeasure(alpha, std::move(atoms));
}

}  // namespace ldp
