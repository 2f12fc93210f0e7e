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

#include <benchmark/benchmark.h>

#include <cmath>

#include "ldp/continuous.hpp"
#include "ldp/factorize.hpp"
#include "ldp/finite_fisher.hpp"
#include "ldp/quadrature.hpp"
#include "ldp/uniform_sim.hpp"
#include "../tests/support/test_support.hpp"

namespace {

void FactorizeSparse(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ldp::RngStream rng = ldp::RngStream::Keyed(2);
  const ldp::Channel q = ldp_test::MakeRandomLdpChannel(rng, d, 8, 0.8);
  for (auto _ : state) {
    auto fact = ldp::Factorize(q, 0.8, ldp::DecomposeMode::kSparse);
    benchmark::DoNotOptimize(fact.omega);
  }
}
BENCHMARK(FactorizeSparse)->DenseRange(2, 6);

void FactorizeProduct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ldp::RngStream rng = ldp::RngStream::Keyed(3);
  const ldp::Channel q = ldp_test::MakeRandomLdpChannel(rng, d, 8, 0.8);
  for (auto _ : state) {
    auto fact = ldp::Factorize(q, 0.8, ldp::DecomposeMode::kProduct);
    benchmark::DoNotOptimize(fact.omega);
  }
}
BENCHMARK(FactorizeProduct)->DenseRange(2, 6);

void SolveLpOverPatterns(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ldp::RngStream rng = ldp::RngStream::Keyed(4);
  const ldp::FiniteModel model = ldp_test::MakeRandomModel(rng, d);
  for (auto _ : state) {
    auto result = ldp::SolveLp(model, 0.2);
    benchmark::DoNotOptimize(result.i_max);
  }
  state.SetComplexityN(1 << d);
}
BENCHMARK(SolveLpOverPatterns)->DenseRange(4, 12, 2)->Complexity();

void GaussKronrodMeanAbsScore(benchmark::State& state) {
  const ldp::ContinuousModel gauss = ldp::ContinuousModel::Gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss.MeanAbsScore());
  }
}
BENCHMARK(GaussKronrodMeanAbsScore);

void UniformSimulationBlock(benchmark::State& state) {
  ldp::SimConfig config;
  config.n = 1000;
  config.iterations = static_cast<std::int64_t>(state.range(0));
  config.grid_start = 0.9;
  config.grid_end = 0.9;
  config.grid_step = 1.0;
  config.workers = 1;
  for (auto _ : state) {
    auto report = ldp::RunSimulation(config);
    benchmark::DoNotOptimize(report.points);
  }
  state.SetItemsProcessed(state.iterations() * config.iterations * config.n);
}
BENCHMARK(UniformSimulationBlock)->Arg(1000)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
