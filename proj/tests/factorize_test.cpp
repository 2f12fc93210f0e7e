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

#include "ldp/factorize.hpp"

#include <cmath>
#include <vector>

#include <stdexcept>

#include <doctest.h>

#include "support/test_support.hpp"

namespace {

using ldp::Channel;
using ldp::Compose;
using ldp::DecomposeMode;
using ldp::Factorize;
using ldp::MinMass;
using ldp::NormalizedRatios;
using ldp::VertexDecompose;
using ldp::VertexWeight;
using ldp_test::MakeRandomLdpChannel;
using ldp_test::RandomizedResponse;

double ReconstructCoordinate(const std::vector<VertexWeight>& atoms, int j,
                             double alpha) {
  const double ea = std::exp(alpha);
  double v = 0.0;
  for (const auto& [beta, w] : atoms) v += w * (((beta >> j) & 1u) ? ea : 1.0);
  return v;
}

TEST_CASE("minimal mass function") {
  const double alpha = 0.5;
  const double ea = std::exp(alpha);
  SUBCASE("randomized response") {
    const auto qmin = MinMass(RandomizedResponse(alpha));
    CHECK(qmin[0] == doctest::Approx(1 / (1 + ea)).epsilon(1e-15));
    CHECK(qmin[1] == doctest::Approx(1 / (1 + ea)).epsilon(1e-15));
  }
  SUBCASE("zero column") {
    const Channel c(2, 2, {1.0, 0.0, 1.0, 0.0});
    CHECK(MinMass(c) == std::vector<double>{1.0, 0.0});
  }
  SUBCASE("uniform kernel") {
    const Channel c(3, 4, std::vector<double>(12, 0.25));
    for (double v : MinMass(c)) CHECK(v == 0.25);
  }
}

TEST_CASE("normalized ratios live in [1, e^alpha]") {
  const double alpha = 0.5;
  const double ea = std::exp(alpha);
  SUBCASE("randomized response columns are permutations of (e^a, 1)") {
    const auto u = NormalizedRatios(RandomizedResponse(alpha), alpha);
    CHECK(u[0] == doctest::Approx(ea).epsilon(1e-14));
    CHECK(u[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u[3] == doctest::Approx(ea).epsilon(1e-14));
  }
  SUBCASE("uniform kernel gives u identically 1") {
    const Channel c(3, 4, std::vector<double>(12, 0.25));
    for (double v : NormalizedRatios(c, alpha)) CHECK(v == 1.0);
  }
  SUBCASE("budget violation is detected") {
    CHECK_THROWS_AS(NormalizedRatios(RandomizedResponse(1.0), 0.5),
                    std::invalid_argument);
  }
  SUBCASE("extremal channels produce only endpoint values") {
    ldp::RngStream rng = ldp::RngStream::Keyed(41);
    const auto extremal = ldp_test::MakeRandomExtremal(rng, 4, alpha);
    for (double v : NormalizedRatios(extremal.q1, alpha)) {
      const bool endpoint =
          std::abs(v - 1.0) < 1e-12 || std::abs(v - ea) < 1e-12;
      CHECK(endpoint);
    }
  }
}

TEST_CASE("vertex decomposition") {
  const double alpha = 0.9;
  const double ea = std::exp(alpha);
  SUBCASE("the all-ones point is the vertex r_0") {
    for (auto mode : {DecomposeMode::kProduct, DecomposeMode::kSparse}) {
      const auto atoms = VertexDecompose(std::vector<double>{1, 1, 1}, alpha, mode);
      REQUIRE(atoms.size() == 1);
      CHECK(atoms[0].beta == 0);
      CHECK(atoms[0].weight == doctest::Approx(1.0));
    }
  }
  SUBCASE("a vertex decomposes as itself") {
    const std::vector<double> u{ea, 1, 1, 1};
    for (auto mode : {DecomposeMode::kProduct, DecomposeMode::kSparse}) {
      const auto atoms = VertexDecompose(u, alpha, mode);
      REQUIRE(atoms.size() == 1);
      CHECK(atoms[0].beta == 1);
    }
  }
  SUBCASE("midpoint of the d=2 rectangle") {
    const double mid = (1 + ea) / 2;
    const std::vector<double> u{mid, mid};
    const auto product = VertexDecompose(u, alpha, DecomposeMode::kProduct);
    REQUIRE(product.size() == 4);
    for (const auto& a : product) CHECK(a.weight == doctest::Approx(0.25));
    const auto sparse = VertexDecompose(u, alpha, DecomposeMode::kSparse);
    REQUIRE(sparse.size() == 2);
    CHECK(sparse[0].beta == 0);
    CHECK(sparse[1].beta == 3);
    CHECK(sparse[0].weight == doctest::Approx(0.5));
    CHECK(sparse[1].weight == doctest::Approx(0.5));
    for (const auto& atoms : {product, sparse}) {
      for (int j = 0; j < 2; ++j) {
        CHECK(ReconstructCoordinate(atoms, j, alpha) ==
              doctest::Approx(mid).epsilon(1e-14));
      }
    }
  }
  SUBCASE("random points reconstruct within 1e-10 in both modes") {
    ldp::RngStream rng = ldp::RngStream::Keyed(42);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + static_cast<int>(rng.NextU64() % 6);
      std::vector<double> u(d);
      for (double& v : u) v = rng.Uniform(1.0, ea);
      for (auto mode : {DecomposeMode::kProduct, DecomposeMode::kSparse}) {
        const auto atoms = VertexDecompose(u, alpha, mode);
        double total = 0.0;
        for (const auto& a : atoms) {
          CHECK(a.weight >= 0.0);
          total += a.weight;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        if (mode == DecomposeMode::kSparse) {
          CHECK(atoms.size() <= static_cast<std::size_t>(d) + 1);
        }
        for (int j = 0; j < d; ++j) {
          CHECK(std::abs(ReconstructCoordinate(atoms, j, alpha) - u[j]) <
                1e-10);
        }
      }
    }
  }
  SUBCASE("coordinates outside the rectangle are rejected") {
    CHECK_THROWS_AS(
        VertexDecompose(std::vector<double>{0.5}, alpha, DecomposeMode::kSparse),
        std::invalid_argument);
    CHECK_THROWS_AS(
        VertexDecompose(std::vector<double>{ea + 0.1}, alpha, DecomposeMode::kSparse),
        std::invalid_argument);
  }
}

TEST_CASE("factorizing an already-extremal channel") {
  const double alpha = 0.5;
  const auto fact = Factorize(RandomizedResponse(alpha), alpha,
                              DecomposeMode::kSparse);
  CHECK(fact.support.size() == 2);
  const double w = 1.0 / (1.0 + std::exp(alpha));
  CHECK(fact.omega[0].second == doctest::Approx(w).epsilon(1e-14));
  CHECK(fact.omega[1].second == doctest::Approx(w).epsilon(1e-14));
  // The second stage is the identity up to relabeling: one unit entry per row.
  for (int y = 0; y < 2; ++y) {
    int units = 0;
    for (int z = 0; z < 2; ++z) {
      if (std::abs(fact.q2.at(y, z) - 1.0) < 1e-12) ++units;
    }
    CHECK(units == 1);
  }
}

TEST_CASE("alpha = 0 channels factor through the all-ones pattern") {
  const Channel flat(3, 2, {0.3, 0.7, 0.3, 0.7, 0.3, 0.7});
  const auto fact = Factorize(flat, 0.0, DecomposeMode::kProduct);
  REQUIRE(fact.support == std::vector<std::uint64_t>{0});
  CHECK(fact.omega[0].second == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fact.q2.at(0, 0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(fact.q2.at(0, 1) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("round trip and invariants on random channels") {
  ldp::RngStream rng = ldp::RngStream::Keyed(43);
  const double alphas[] = {0.1, 0.8, 2.0};
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng.NextU64() % 5);
    const int l = 2 + static_cast<int>(rng.NextU64() % 7);
    const double alpha = alphas[trial % 3];
    const Channel q = MakeRandomLdpChannel(rng, d, l, alpha);
    for (auto mode : {DecomposeMode::kProduct, DecomposeMode::kSparse}) {
      const auto fact = Factorize(q, alpha, mode);
      const Channel recomposed = Compose(fact.q1, fact.q2);
      for (int x = 0; x < d; ++x) {
        for (int z = 0; z < l; ++z) {
          CHECK(std::abs(recomposed.at(x, z) - q.at(x, z)) < 1e-12);
        }
      }
      const double mass = fact.OmegaMass();
      CHECK(mass <= 1.0 + 1e-12);
      CHECK(mass >= std::exp(-alpha) - 1e-12);
      CHECK(ldp::IsExtremal(fact.q1, alpha));
      // omega-normalization: sum_beta omega_beta r_beta(x) = 1.
      const double ea = std::exp(alpha);
      for (int x = 0; x < d; ++x) {
        double row = 0.0;
        for (const auto& [beta, w] : fact.omega) {
          row += w * (((beta >> x) & 1u) ? ea : 1.0);
        }
        CHECK(std::abs(row - 1.0) < 1e-10);
      }
      // q1 is consistent with omega: q1_x(beta) = omega_beta r_beta(x).
      for (std::size_t k = 0; k < fact.support.size(); ++k) {
        const auto [beta, w] = fact.omega[k];
        for (int x = 0; x < d; ++x) {
          const double expected = w * (((beta >> x) & 1u) ? ea : 1.0);
          CHECK(fact.q1.at(x, static_cast<int>(k)) ==
                doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("factorize rejects channels beyond the stated budget") {
  CHECK_THROWS_AS(Factorize(RandomizedResponse(1.0), 0.5, DecomposeMode::kSparse),
                  std::invalid_argument);
}

}  // namespace
