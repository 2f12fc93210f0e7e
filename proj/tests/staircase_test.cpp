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

#include "ldp/staircase.hpp"

#include <cmath>
#include <set>

#include <stdexcept>

#include <doctest.h>

#include "ldp/rng.hpp"

namespace {

using ldp::Pattern;
using ldp::PatternForSet;
using ldp::StaircaseMatrix;

TEST_CASE("d=2 staircase matrix enumerates the four vertices") {
  const double alpha = 0.7;
  const double ea = std::exp(alpha);
  const StaircaseMatrix matrix(2, alpha);
  // Columns follow the dyadic digits: r_1 = (e^a, 1), r_2 = (1, e^a).
  const double expected[2][4] = {{1, ea, 1, ea}, {1, 1, ea, ea}};
  for (std::uint64_t beta = 0; beta < 4; ++beta) {
    for (int j = 0; j < 2; ++j) {
      CHECK(matrix.entry(j, beta) == expected[j][beta]);
    }
  }
}

TEST_CASE("pattern r_2 in dimension 3") {
  const double alpha = 1.1;
  const auto r2 = Pattern(3, 2, alpha);
  CHECK(r2.value(0) == 1.0);
  CHECK(r2.value(1) == std::exp(alpha));
  CHECK(r2.value(2) == 1.0);
  CHECK(r2.f_plus() == std::vector<int>{1});
}

TEST_CASE("beta = 0 is the all-ones vertex") {
  const auto r0 = Pattern(4, 0, 0.7);
  for (int j = 0; j < 4; ++j) CHECK(r0.value(j) == 1.0);
  CHECK(r0.f_plus().empty());
}

TEST_CASE("pattern_for_set computes the dyadic index") {
  const double alpha = 0.4;
  SUBCASE("singleton {1} in d=2 -> beta 2") {
    const auto p = PatternForSet(2, {1}, alpha);
    CHECK(p.index().beta == 2);
    CHECK(p.value(0) == 1.0);
    CHECK(p.value(1) == std::exp(alpha));
  }
  SUBCASE("empty set -> beta 0, all ones") {
    const auto p = PatternForSet(5, {}, alpha);
    CHECK(p.index().beta == 0);
    for (int j = 0; j < 5; ++j) CHECK(p.value(j) == 1.0);
  }
  SUBCASE("{0,2} in d=3 -> beta 5 = 2^0 + 2^2") {
    const auto p = PatternForSet(3, {0, 2}, alpha);
    CHECK(p.index().beta == 5);
    CHECK(p.value(0) == std::exp(alpha));
    CHECK(p.value(1) == 1.0);
    CHECK(p.value(2) == std::exp(alpha));
  }
}

TEST_CASE("beta <-> F+ is a bijection over all subsets") {
  const int d = 6;
  std::set<std::uint64_t> seen;
  for (const auto& pattern : StaircaseMatrix(d, 0.9)) {
    const auto round_trip = PatternForSet(d, pattern.f_plus(), 0.9);
    CHECK(round_trip.index().beta == pattern.index().beta);
    seen.insert(pattern.index().beta);
  }
  CHECK(seen.size() == (std::uint64_t{1} << d));
}

TEST_CASE("every pattern is a vertex of [1, e^a]^d") {
  ldp::RngStream rng = ldp::RngStream::Keyed(11);
  const double alpha = 1.3;
  const double ea = std::exp(alpha);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.NextU64() % 10);
    const std::uint64_t beta = rng.NextU64() & ((std::uint64_t{1} << d) - 1);
    const auto p = Pattern(d, beta, alpha);
    for (int j = 0; j < d; ++j) {
      const double v = p.value(j);
      CHECK((v == 1.0 || v == ea));
      CHECK(p.in_f_plus(j) == (v == ea));
    }
  }
}

TEST_CASE("alpha = 0 collapses all patterns to the all-ones vector") {
  const StaircaseMatrix matrix(5, 0.0);
  for (const auto& pattern : matrix) {
    for (int j = 0; j < 5; ++j) CHECK(pattern.value(j) == 1.0);
  }
}

TEST_CASE("validation rejects bad inputs") {
  CHECK_THROWS_AS(Pattern(3, 8, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Pattern(3, 1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(PatternForSet(3, {3}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(PatternForSet(3, {-1}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Pattern(25, 0, 0.5), std::invalid_argument);  // over the cap
  CHECK_NOTHROW(Pattern(25, 0, 0.5, /*cap=*/30));
}

}  // namespace
