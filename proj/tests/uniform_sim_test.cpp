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

#include <cmath>
#include <cstring>
#include <vector>

#include <stdexcept>

#include <doctest.h>

#include "support/test_support.hpp"

namespace {

using ldp::AsymptoticVariance;
using ldp::Estimate;
using ldp::EstimateFromMean;
using ldp::RunSimulation;
using ldp::SimConfig;
using ldp::TildeP1;
using ldp::UniformSimReport;
using ldp_test::ComputeExactUniformMoments;

bool BitIdentical(const UniformSimReport& a, const UniformSimReport& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& x = a.points[i];
    const auto& y = b.points[i];
    if (std::memcmp(&x.emp_mean, &y.emp_mean, sizeof(double)) != 0) return false;
    if (std::memcmp(&x.emp_std, &y.emp_std, sizeof(double)) != 0) return false;
    if (x.valid_count != y.valid_count) return false;
    if (x.invalid_frac != y.invalid_frac) return false;
  }
  return true;
}

TEST_CASE("tilde p1") {
  const double a = 0.3, ea = std::exp(a);
  SUBCASE("preliminary above theta clamps at e^a/(1+e^a)") {
    CHECK(TildeP1(1.0, 1.5, a) == doctest::Approx(ea / (1 + ea)).epsilon(1e-15));
    CHECK(TildeP1(1.0, 1.0, a) == doctest::Approx(ea / (1 + ea)).epsilon(1e-15));
  }
  SUBCASE("ratio 1/2 lands exactly on 1/2 for every alpha") {
    CHECK(TildeP1(1.0, 0.5, a) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(TildeP1(2.0, 1.0, 1.7) == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("alpha = 0 is a fair coin regardless of theta") {
    CHECK(TildeP1(3.7, 0.2, 0.0) == 0.5);
  }
  CHECK_THROWS_AS(TildeP1(-1.0, 0.5, a), std::invalid_argument);
}

TEST_CASE("plug-in estimator") {
  const double a = 0.3, ea = std::exp(a);
  SUBCASE("population value inverts exactly to theta0 or theta_p") {
    const double theta0 = 1.0;
    for (double theta_p : {0.5, 0.9, 1.0, 1.2}) {
      const auto est =
          EstimateFromMean(TildeP1(theta0, theta_p, a), 1000, theta_p, a);
      REQUIRE(est.valid);
      CHECK(est.theta_hat ==
            doctest::Approx(std::max(theta0, theta_p)).epsilon(1e-12));
    }
  }
  SUBCASE("the singular boundary is flagged invalid") {
    const auto est = EstimateFromMean(1.0 / (1.0 + ea), 100, 0.9, a);
    CHECK_FALSE(est.valid);
    const auto neg = EstimateFromMean(0.0, 100, 0.9, a);
    CHECK_FALSE(neg.valid);
  }
  SUBCASE("bit-vector interface") {
    const std::vector<std::uint8_t> bits{1, 1, 0, 1};
    const auto est = Estimate(bits, 0.9, a);
    CHECK(est.z_bar == doctest::Approx(0.75));
    CHECK(est.n == 4);
    CHECK_THROWS_AS(Estimate({}, 0.9, a), std::invalid_argument);
  }
}

TEST_CASE("asymptotic variance") {
  const double a = 0.3, ea = std::exp(a);
  SUBCASE("theta_p = theta0 = 1 simplifies to e^a/(e^a-1)^2") {
    const double v = AsymptoticVariance(1.0, 1.0, a);
    CHECK(v == doctest::Approx(ea / ((ea - 1) * (ea - 1))).epsilon(1e-14));
    CHECK(v == doctest::Approx(11.028).epsilon(1e-4));
  }
  SUBCASE("alpha -> 0 at theta_p = theta0: v alpha^2 / theta0^2 -> 1") {
    const double alpha = 1e-4;
    CHECK(AsymptoticVariance(2.0, 2.0, alpha) * alpha * alpha / 4.0 ==
          doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("small theta_p asymptotics: v ~ theta0^4 / (alpha^2 theta_p^2)") {
    const double alpha = 1e-4, theta_p = 0.1, theta0 = 1.0;
    const double v = AsymptoticVariance(theta0, theta_p, alpha);
    CHECK(v * alpha * alpha * theta_p * theta_p ==
          doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(AsymptoticVariance(1.0, 1.2, a), std::invalid_argument);
}

TEST_CASE("uniform channel bit sampler") {
  const ldp::UniformChannel ch{0.5, 0.8};
  const double ea = std::exp(0.5);
  CHECK(ch.POne(0.5) == doctest::Approx(ea / (1 + ea)));
  CHECK(ch.POne(0.9) == doctest::Approx(1.0 / (1 + ea)));
  ldp::RngStream rng = ldp::RngStream::Keyed(61);
  int ones = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) ones += ch.SampleBit(0.2, rng);
  const double p = ea / (1 + ea);
  CHECK(std::abs(static_cast<double>(ones) / n - p) <
        4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("simulation is bit-identical across worker counts") {
  SimConfig config;
  config.n = 200;
  config.iterations = 3000;
  config.grid_start = 0.7;
  config.grid_end = 1.1;
  config.grid_step = 0.2;
  config.seed = 99;
  config.workers = 1;
  const auto r1 = RunSimulation(config);
  config.workers = 4;
  const auto r4 = RunSimulation(config);
  config.workers = 8;
  const auto r8 = RunSimulation(config);
  CHECK(BitIdentical(r1, r4));
  CHECK(BitIdentical(r1, r8));
}

TEST_CASE("simulation matches the exact law of the estimator") {
  // Oracle: n Z-bar is Binomial(n, p~), so the conditional mean and standard
  // deviation of theta_hat follow from the binomial pmf directly.
  SimConfig config;
  config.n = 400;
  config.iterations = 40000;
  config.grid_start = 0.8;
  config.grid_end = 1.2;
  config.grid_step = 0.2;  // grid {0.8, 1.0, 1.2}
  config.alpha = 0.4;
  config.seed = 4242;
  const auto report = RunSimulation(config);
  REQUIRE(report.points.size() == 3);
  for (const auto& point : report.points) {
    const auto exact = ComputeExactUniformMoments(config.n, config.theta0,
                                                  point.theta_p, config.alpha);
    const double se_mean =
        exact.stddev / std::sqrt(static_cast<double>(point.valid_count));
    CHECK(std::abs(point.emp_mean - exact.mean) < 5.0 * se_mean);
    // Std agreement within 5%: the sample std of a heavy-tailed ratio is
    // noisier than the mean, so the band is generous.
    CHECK(point.emp_std == doctest::Approx(exact.stddev).epsilon(0.05));
  }
}

TEST_CASE("invalid replications are excluded and counted") {
  // n = 3, theta_p/theta0 = 1/2 makes p~ = 1/2 and valid needs Z-bar > 0.4256,
  // so the invalid fraction is P(Binomial(3, 1/2) <= 1) = 1/2.
  SimConfig config;
  config.n = 3;
  config.iterations = 200000;
  config.grid_start = 0.5;
  config.grid_end = 0.5;
  config.grid_step = 1.0;
  config.alpha = 0.3;
  config.seed = 5;
  const auto report = RunSimulation(config);
  CHECK(report.points[0].invalid_frac == doctest::Approx(0.5).epsilon(0.01));
  CHECK(report.points[0].valid_count ==
        config.iterations -
            static_cast<std::int64_t>(report.points[0].invalid_frac *
                                      static_cast<double>(config.iterations)));
}

TEST_CASE("two-stage mode estimates theta_p from an independent sample") {
  SimConfig config;
  config.n = 500;
  config.iterations = 4000;
  config.grid_start = 1.0;
  config.grid_end = 1.0;
  config.grid_step = 1.0;
  config.two_stage = true;
  config.preliminary_fraction = 0.2;
  config.seed = 17;
  const auto report = RunSimulation(config);
  // The preliminary maximum sits below theta0, so the estimator is
  // consistent; at n = 500 it should land within a few percent.
  CHECK(report.points[0].emp_mean == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::isnan(report.points[0].theory_std));
}

TEST_CASE("config validation") {
  SimConfig config;
  config.n = 0;
  CHECK_THROWS_AS(RunSimulation(config), std::invalid_argument);
  config.n = 10;
  config.grid_step = -1.0;
  CHECK_THROWS_AS(RunSimulation(config), std::invalid_argument);
}

}  // namespace
