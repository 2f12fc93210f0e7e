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

#include "ldp/uniform_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ldp {

namespace {

constexpr std::int64_t kBlockSize = 2048;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct BlockStats {
  std::int64_t valid = 0;
  std::int64_t invalid = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

double UniformChannel::POne(double x) const {
  const double ea = std::exp(alpha);
  return (x < theta_p ? ea : 1.0) / (1.0 + ea);
}

int UniformChannel::SampleBit(double x, RngStream& rng) const {
  return rng.Bernoulli(POne(x)) ? 1 : 0;
}

double TildeP1(double theta, double theta_p, double alpha) {
  if (!(theta > 0.0) || !(theta_p > 0.0)) {
    throw std::invalid_argument("theta and theta_p must be positive");
  }
  const double ea = std::exp(alpha);
  return 1.0 / (1.0 + ea) +
         (ea - 1.0) / (1.0 + ea) * std::min(theta_p / theta, 1.0);
}

UniformEstimate EstimateFromMean(double z_bar, std::int64_t n, double theta_p,
                                 double alpha) {
  if (n < 1) throw std::invalid_argument("estimate needs n >= 1");
  if (!(theta_p > 0.0)) throw std::invalid_argument("theta_p must be positive");
  const double ea = std::exp(alpha);
  const double denom = (1.0 + ea) * z_bar - 1.0;
  UniformEstimate est;
  est.z_bar = z_bar;
  est.n = n;
  est.valid = denom > 0.0;
  est.theta_hat = est.valid ? theta_p * (ea - 1.0) / denom : kNaN;
  return est;
}

UniformEstimate Estimate(std::span<const std::uint8_t> bits, double theta_p,
                         double alpha) {
  if (bits.empty()) throw std::invalid_argument("estimate needs n >= 1");
  std::int64_t ones = 0;
  for (std::uint8_t b : bits) ones += (b != 0);
  const double z_bar =
      static_cast<double>(ones) / static_cast<double>(bits.size());
  return EstimateFromMean(z_bar, static_cast<std::int64_t>(bits.size()),
                          theta_p, alpha);
}

double AsymptoticVariance(double theta0, double theta_p, double alpha) {
  if (!(theta_p > 0.0) || !(theta_p <= theta0)) {
    throw std::invalid_argument(
        "asymptotic variance requires 0 < theta_p <= theta0");
  }
  const double ea = std::exp(alpha);
  const double ratio = theta_p / theta0;
  const double t0_sq = theta0 * theta0;
  return t0_sq * t0_sq / (theta_p * theta_p) / ((ea - 1.0) * (ea - 1.0)) *
         (1.0 + (ea - 1.0) * ratio) * (ea - (ea - 1.0) * ratio);
}

std::vector<double> SimulationGrid(const SimConfig& config) {
  if (!(config.grid_step > 0.0) || !(config.grid_start > 0.0)) {
    throw std::invalid_argument("grid start and step must be positive");
  }
  std::vector<double> grid;
  for (double v = config.grid_start;
       v <= config.grid_end + 0.5 * config.grid_step; v += config.grid_step) {
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("empty theta_p grid");
  return grid;
}

UniformSimReport RunSimulation(const SimConfig& config) {
  if (!(config.theta0 > 0.0)) throw std::invalid_argument("theta0 must be positive");
  if (config.n < 1) throw std::invalid_argument("n must be >= 1");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(config.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (config.two_stage &&
      !(config.preliminary_fraction > 0.0 && config.preliminary_fraction <= 1.0)) {
    throw std::invalid_argument("preliminary fraction must lie in (0, 1]");
  }

  const std::vector<double> grid = SimulationGrid(config);
  const int num_grid = static_cast<int>(grid.size());
  const std::int64_t blocks_per_grid =
      (config.iterations + kBlockSize - 1) / kBlockSize;
  const std::int64_t num_tasks = num_grid * blocks_per_grid;

  const double ea = std::exp(config.alpha);
  const double p_hi = ea / (1.0 + ea);
  const double p_lo = 1.0 / (1.0 + ea);
  const std::int64_t prelim_n =
      config.two_stage
          ? std::max<std::int64_t>(
                1, static_cast<std::int64_t>(
                       std::ceil(config.preliminary_fraction *
                                 static_cast<double>(config.n))))
          : 0;

  std::vector<BlockStats> stats(static_cast<std::size_t>(num_tasks));
  std::atomic<std::int64_t> next_task{0};

  auto worker_loop = [&]() {
    for (;;) {
      const std::int64_t task = next_task.fetch_add(1);
      if (task >= num_tasks) return;
      const int g = static_cast<int>(task / blocks_per_grid);
      const std::int64_t block = task % blocks_per_grid;
      const std::int64_t rep_begin = block * kBlockSize;
      const std::int64_t rep_end =
          std::min(rep_begin + kBlockSize, config.iterations);
      BlockStats& bs = stats[static_cast<std::size_t>(task)];
      for (std::int64_t rep = rep_begin; rep < rep_end; ++rep) {
        RngStream rng = RngStream::Keyed(config.seed,
                                         static_cast<std::uint64_t>(g),
                                         static_cast<std::uint64_t>(rep));
        double theta_p = grid[static_cast<std::size_t>(g)];
        if (config.two_stage) {
          // Preliminary stage on an independent sample; the maximum never
          // exceeds theta0, which is what consistency requires.
          double prelim_max = 0.0;
          for (std::int64_t i = 0; i < prelim_n; ++i) {
            prelim_max = std::max(prelim_max, config.theta0 * rng.NextDouble());
          }
          theta_p = prelim_max;
        }
        std::int64_t ones = 0;
        for (std::int64_t i = 0; i < config.n; ++i) {
          const double x = config.theta0 * rng.NextDouble();
          const double p1 = x < theta_p ? p_hi : p_lo;
          ones += rng.NextDouble() < p1;
        }
        const double z_bar =
            static_cast<double>(ones) / static_cast<double>(config.n);
        const double denom = (1.0 + ea) * z_bar - 1.0;
        if (denom > 0.0 && theta_p > 0.0) {
          const double theta_hat = theta_p * (ea - 1.0) / denom;
          bs.valid += 1;
          bs.sum += theta_hat;
          bs.sum_sq += theta_hat * theta_hat;
        } else {
          bs.invalid += 1;
        }
      }
    }
  };

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, num_tasks));
  if (workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }

  UniformSimReport report;
  report.config = config;
  const double floor = config.theta0 /
                       ((ea - 1.0) * std::sqrt(static_cast<double>(config.n)));
  for (int g = 0; g < num_grid; ++g) {
    // Fold this grid point's blocks in index order: the reduction is
    // identical no matter how tasks were scheduled.
    BlockStats total;
    for (std::int64_t b = 0; b < blocks_per_grid; ++b) {
      const BlockStats& bs =
          stats[static_cast<std::size_t>(g * blocks_per_grid + b)];
      total.valid += bs.valid;
      total.invalid += bs.invalid;
      total.sum += bs.sum;
      total.sum_sq += bs.sum_sq;
    }
    GridPointStats point;
    point.theta_p = grid[static_cast<std::size_t>(g)];
    point.valid_count = total.valid;
    point.invalid_frac = static_cast<double>(total.invalid) /
                         static_cast<double>(config.iterations);
    point.fisher_floor = floor;
    if (total.valid > 0) {
      point.emp_mean = total.sum / static_cast<double>(total.valid);
      if (total.valid > 1) {
        const double var =
            (total.sum_sq - total.sum * total.sum / static_cast<double>(total.valid)) /
            static_cast<double>(total.valid - 1);
        point.emp_std = std::sqrt(std::max(var, 0.0));
      }
    } else {
      point.emp_mean = kNaN;
      point.emp_std = kNaN;
    }
    if (!config.two_stage && point.theta_p <= config.theta0 &&
        config.alpha > 0.0) {
      point.theory_std = std::sqrt(
          AsymptoticVariance(config.theta0, point.theta_p, config.alpha) /
          static_cast<double>(config.n));
    } else {
      point.theory_std = kNaN;
    }
    report.points.push_back(point);
  }
  return report;
}

}  // namespace ldp
