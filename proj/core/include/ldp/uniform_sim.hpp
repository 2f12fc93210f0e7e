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

#ifndef LDP_UNIFORM_SIM_HPP_
#define LDP_UNIFORM_SIM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ldp/rng.hpp"

namespace ldp {

// Bernoulli privatization of uniform[0, theta] data anchored at a
// preliminary estimate: P(Z=1 | X=x) is e^a/(1+e^a) below theta_p and
// 1/(1+e^a) above it.
struct UniformChannel {
  double alpha = 0.0;
  double theta_p = 1.0;

  double POne(double x) const;
  int SampleBit(double x, RngStream& rng) const;
};

// P_theta(Z = 1) = 1/(1+e^a) + (e^a-1)/(1+e^a) * min(theta_p / theta, 1).
double TildeP1(double theta, double theta_p, double alpha);

struct UniformEstimate {
  double theta_hat = 0.0;
  double z_bar = 0.0;
  std::int64_t n = 0;
  // False when (1+e^a) z_bar - 1 <= 0, where the plug-in inversion is
  // undefined or negative.
  bool valid = false;
};

// theta_hat = theta_p (e^a - 1) / ((1+e^a) z_bar - 1).
UniformEstimate EstimateFromMean(double z_bar, std::int64_t n, double theta_p,
                                 double alpha);
UniformEstimate Estimate(std::span<const std::uint8_t> bits, double theta_p,
                         double alpha);

// Asymptotic variance v(theta0, theta_p) of sqrt(n)(theta_hat - theta0),
// valid for 0 < theta_p <= theta0.
double AsymptoticVariance(double theta0, double theta_p, double alpha);

struct SimConfig {
  double theta0 = 1.0;
  std::int64_t n = 1000;
  double alpha = 0.3;
  double grid_start = 0.5;
  double grid_end = 1.3;
  double grid_step = 0.05;
  std::int64_t iterations = 100000;
  std::uint64_t seed = 1;
  int workers = 0;  // <= 0 picks hardware concurrency
  // Two-stage mode: theta_p is re-estimated per replication as the maximum
  // of an independent preliminary sample instead of taken from the grid.
  bool two_stage = false;
  double preliminary_fraction = 0.1;
};

struct GridPointStats {
  double theta_p = 0.0;
  double emp_mean = 0.0;
  double emp_std = 0.0;
  // sqrt(v(theta0, theta_p) / n); NaN for theta_p > theta0, where no CLT is
  // available.
  double theory_std = 0.0;
  double fisher_floor = 0.0;
  double invalid_frac = 0.0;
  std::int64_t valid_count = 0;
};

struct UniformSimReport {
  SimConfig config;
  std::vector<GridPointStats> points;
};

// Monte Carlo replications of (draw n uniforms, privatize, estimate) for
// every grid value of theta_p. Replication (g, r) draws from the stream
// keyed by (seed, g, r), and partial results merge in a fixed block order,
// so the report is bit-identical for any worker count.
UniformSimReport RunSimulation(const SimConfig& config);

std::vector<double> SimulationGrid(const SimConfig& config);

}  // namespace ldp

#endif  // LDP_UNIFORM_SIM_HPP_
