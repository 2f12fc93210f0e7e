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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

// Clamped coordinates in the lambda parametrization of the hyperrectangle:
// u = 1 + (e^alpha - 1) * lambda with lambda in [0,1]^d.
std::vector<double> ToLambda(std::span<const double> u, double alpha) {
  const double ea = std::exp(alpha);
  const double span = ea - 1.0;
  std::vector<double> lambda(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < 1.0 - kLdpSlackTol || u[j] > ea * (1.0 + kLdpSlackTol)) {
      throw std::invalid_argument(
          "coordinate " + std::to_string(u[j]) +
          " outside the hyperrectangle [1, e^alpha]");
    }
    if (span == 0.0) {
      lambda[j] = 0.0;  // alpha == 0 collapses the rectangle to {1}^d
      continue;
    }
    lambda[j] = std::clamp((u[j] - 1.0) / span, 0.0, 1.0);
  }
  return lambda;
}

std::vector<VertexWeight> DecomposeProduct(std::span<const double> lambda) {
  const int d = static_cast<int>(lambda.size());
  const std::uint64_t n = std::uint64_t{1} << d;
  std::vector<VertexWeight> atoms;
  for (std::uint64_t beta = 0; beta < n; ++beta) {
    double c = 1.0;
    for (int j = 0; j < d && c != 0.0; ++j) {
      c *= ((beta >> j) & 1u) ? lambda[j] : 1.0 - lambda[j];
    }
    if (c > 0.0) atoms.push_back({beta, c});
  }
  return atoms;
}

// Greedy peeling: round the residual to its nearest vertex (ties go to
// e^alpha), remove the largest feasible multiple of it, recurse on the rest.
// Each step pins at least one coordinate, so at most d+1 atoms result.
std::vector<VertexWeight> DecomposeSparse(std::span<const double> lambda) {
  const int d = static_cast<int>(lambda.size());
  std::vector<double> rho(lambda.begin(), lambda.end());
  double mass = 1.0;
  std::map<std::uint64_t, double> atoms;
  for (int step = 0; step <= d && mass > 0.0; ++step) {
    std::uint64_t beta = 0;
    double w = mass;
    for (int j = 0; j < d; ++j) {
      if (rho[j] >= 0.5 * mass) {
        beta |= std::uint64_t{1} << j;
        w = std::min(w, rho[j]);
      } else {
        w = std::min(w, mass - rho[j]);
      }
    }
    if (w <= 0.0) break;
    atoms[beta] += w;
    for (int j = 0; j < d; ++j) {
      if ((beta >> j) & 1u) rho[j] -= w;
    }
    mass -= w;
  }
  std::vector<VertexWeight> out;
  out.reserve(atoms.size());
  for (const auto& [beta, w] : atoms) out.push_back({beta, w});
  // Rounding can leave a sliver of unassigned mass; fold it into the
  // heaviest atom to keep the weights summing to exactly one.
  if (mass > 0.0 && !out.empty()) {
    auto heaviest = std::max_element(
        out.begin(), out.end(),
        [](const VertexWeight& a, const VertexWeight& b) { return a.weight < b.weight; });
    heaviest->weight += mass;
  }
  return out;
}

std::vector<VertexWeight> PruneAndNormalize(std::vector<VertexWeight> atoms) {
  std::erase_if(atoms, [](const VertexWeight& a) { return a.weight < kWeightFloor; });
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  if (atoms.empty() || total <= 0.0) {
    throw std::logic_error("vertex decomposition lost all mass");
  }
  for (auto& a : atoms) a.weight /= total;
  return atoms;
}

}  // namespace

std::vector<double> MinMass(const Channel& channel) {
  const int d = channel.input_size();
  const int l = channel.output_size();
  std::vector<double> qmin(l);
  for (int z = 0; z < l; ++z) {
    double m = channel.at(0, z);
    for (int x = 1; x < d; ++x) m = std::min(m, channel.at(x, z));
    qmin[z] = m;
  }
  return qmin;
}

std::vector<double> NormalizedRatios(const Channel& channel, double alpha) {
  const int d = channel.input_size();
  const int l = channel.output_size();
  const double ea = std::exp(alpha);
  const std::vector<double> qmin = MinMass(channel);
  std::vector<double> u(static_cast<std::size_t>(d) * l, 1.0);
  for (int z = 0; z < l; ++z) {
    if (qmin[z] <= 0.0) continue;  // column removable, u pinned to 1
    for (int x = 0; x < d; ++x) {
      const double v = channel.at(x, z) / qmin[z];
      if (v > ea * (1.0 + kLdpSlackTol)) {
        throw std::invalid_argument(
            "likelihood ratio " + std::to_string(v) + " at output " +
            std::to_string(z) + " exceeds e^alpha: budget violated");
      }
      u[static_cast<std::size_t>(x) * l + z] = std::min(v, ea);
    }
  }
  return u;
}

std::vector<VertexWeight> VertexDecompose(std::span<const double> u,
                                          double alpha, DecomposeMode mode) {
  const std::vector<double> lambda = ToLambda(u, alpha);
  std::vector<VertexWeight> atoms = mode == DecomposeMode::kProduct
                                        ? DecomposeProduct(lambda)
                                        : DecomposeSparse(lambda);
  return PruneAndNormalize(std::move(atoms));
}

ExtremalFactorization Factorize(const Channel& channel, double alpha,
                                DecomposeMode mode) {
  const LdpCertificate cert = VerifyLdp(channel, alpha);
  if (!cert.Satisfies(alpha)) {
    throw std::invalid_argument(
        "channel is not " + std::to_string(alpha) +
        "-LDP (effective alpha " + std::to_string(cert.alpha_effective) + ")");
  }

  const int d = channel.input_size();
  const int l = channel.output_size();
  const std::vector<double> qmin = MinMass(channel);
  const std::vector<double> u = NormalizedRatios(channel, alpha);

  std::vector<std::vector<VertexWeight>> coeffs(l);
  std::map<std::uint64_t, double> omega_map;
  std::vector<double> column(d);
  for (int z = 0; z < l; ++z) {
    if (qmin[z] <= 0.0) {
      // Dead output: any convex weights are consistent; pick the all-ones
      // vertex. Contributes nothing to omega.
      coeffs[z] = {{0, 1.0}};
      continue;
    }
    for (int x = 0; x < d; ++x) column[x] = u[static_cast<std::size_t>(x) * l + z];
    coeffs[z] = VertexDecompose(column, alpha, mode);
    for (const auto& [beta, c] : coeffs[z]) omega_map[beta] += qmin[z] * c;
  }

  std::vector<std::uint64_t> support;
  std::vector<std::pair<std::uint64_t, double>> omega;
  for (const auto& [beta, w] : omega_map) {
    if (w > 0.0) {
      support.push_back(beta);
      omega.emplace_back(beta, w);
    }
  }
  const int m = static_cast<int>(support.size());

  const double ea = std::exp(alpha);
  std::vector<double> q1_kernel(static_cast<std::size_t>(d) * m);
  for (int x = 0; x < d; ++x) {
    for (int k = 0; k < m; ++k) {
      const double r = ((support[k] >> x) & 1u) ? ea : 1.0;
      q1_kernel[static_cast<std::size_t>(x) * m + k] = omega[k].second * r;
    }
  }

  std::vector<double> q2_kernel(static_cast<std::size_t>(m) * l, 0.0);
  for (int z = 0; z < l; ++z) {
    if (qmin[z] <= 0.0) continue;
    for (const auto& [beta, c] : coeffs[z]) {
      const auto it = std::lower_bound(support.begin(), support.end(), beta);
      const int k = static_cast<int>(it - support.begin());
      q2_kernel[static_cast<std::size_t>(k) * l + z] =
          qmin[z] * c / omega[k].second;
    }
  }

  return ExtremalFactorization{
      alpha,
      std::move(support),
      std::move(omega),
      Channel(d, m, std::move(q1_kernel)),
      Channel(m, l, std::move(q2_kernel)),
      qmin,
      std::move(coeffs)};
}

}  // namespace ldp
