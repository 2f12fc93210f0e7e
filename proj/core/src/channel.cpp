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

#include "ldp/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ldp {

Channel::Channel(int d, int l, std::vector<double> kernel)
    : d_(d), l_(l), kernel_(std::move(kernel)) {
  if (d < 1 || l < 1) {
    throw std::invalid_argument("channel dimensions must be positive");
  }
  if (kernel_.size() != static_cast<std::size_t>(d) * l) {
    throw std::invalid_argument("kernel size does not match d*l");
  }
  for (int x = 0; x < d_; ++x) {
    double sum = 0.0;
    for (int z = 0; z < l_; ++z) {
      const double v = at(x, z);
      if (!(v >= 0.0)) {
        throw std::invalid_argument("kernel entry q_" + std::to_string(x) +
                                    "(" + std::to_string(z) +
                                    ") is negative or NaN");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw std::invalid_argument("row " + std::to_string(x) +
                                  " sums to " + std::to_string(sum) +
                                  ", not 1 within 1e-12");
    }
  }
}

Channel Channel::Identity(int d) {
  std::vector<double> kernel(static_cast<std::size_t>(d) * d, 0.0);
  for (int x = 0; x < d; ++x) kernel[static_cast<std::size_t>(x) * d + x] = 1.0;
  return Channel(d, d, std::move(kernel));
}

LdpCertificate VerifyLdp(const Channel& channel, double alpha) {
  LdpCertificate cert;
  const int d = channel.input_size();
  const int l = channel.output_size();
  double worst_log_ratio = 0.0;
  for (int z = 0; z < l; ++z) {
    double col_max = -1.0, col_min = std::numeric_limits<double>::infinity();
    int arg_max = 0, arg_min = 0;
    for (int x = 0; x < d; ++x) {
      const double v = channel.at(x, z);
      if (v > col_max) { col_max = v; arg_max = x; }
      if (v < col_min) { col_min = v; arg_min = x; }
    }
    if (col_max == 0.0) {
      // Dead output symbol: removable from the alphabet, not a violation.
      cert.removable_outputs.push_back(z);
      continue;
    }
    if (col_min == 0.0) {
      cert.alpha_effective = std::numeric_limits<double>::infinity();
      cert.witness = LdpWitness{z, arg_max, arg_min};
      cert.is_extremal = false;
      return cert;
    }
    const double log_ratio = std::log(col_max / col_min);
    if (log_ratio > worst_log_ratio) {
      worst_log_ratio = log_ratio;
      cert.witness = LdpWitness{z, arg_max, arg_min};
    }
  }
  cert.alpha_effective = worst_log_ratio;
  cert.is_extremal = IsExtremal(channel, alpha);
  return cert;
}

bool IsExtremal(const Channel& channel, double alpha, double tol) {
  const int d = channel.input_size();
  const int l = channel.output_size();
  const double ea = std::exp(alpha);
  for (int z = 0; z < l; ++z) {
    for (int x = 0; x < d; ++x) {
      const double qa = channel.at(x, z);
      for (int xp = x + 1; xp < d; ++xp) {
        const double qb = channel.at(xp, z);
        if (qa == 0.0 && qb == 0.0) continue;
        if (qa == 0.0 || qb == 0.0) return false;
        const double ratio = qa / qb;
        const bool ok = std::abs(ratio - 1.0) <= tol ||
                        std::abs(ratio - ea) <= tol * ea ||
                        std::abs(ratio - 1.0 / ea) <= tol;
        if (!ok) return false;
      }
    }
  }
  return true;
}

Channel Compose(const Channel& first, const Channel& second) {
  if (first.output_size() != second.input_size()) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  const int d = first.input_size();
  const int m = first.output_size();
  const int l = second.output_size();
  std::vector<double> kernel(static_cast<std::size_t>(d) * l, 0.0);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < m; ++y) {
      const double w = first.at(x, y);
      if (w == 0.0) continue;
      for (int z = 0; z < l; ++z) {
        kernel[static_cast<std::size_t>(x) * l + z] += w * second.at(y, z);
      }
    }
  }
  // The Channel constructor re-asserts row stochasticity within 1e-12.
  return Channel(d, l, std::move(kernel));
}

std::vector<double> PushForward(const Channel& channel,
                                std::span<const double> p) {
  const int d = channel.input_size();
  const int l = channel.output_size();
  if (static_cast<int>(p.size()) != d) {
    throw std::invalid_argument("push-forward: distribution length != d");
  }
  double mass = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("input distribution has a negative entry");
    mass += v;
  }
  if (std::abs(mass - 1.0) > kRowSumTol) {
    throw std::invalid_argument("input distribution is not normalized");
  }
  std::vector<double> out(l, 0.0);
  for (int x = 0; x < d; ++x) {
    if (p[x] == 0.0) continue;
    for (int z = 0; z < l; ++z) out[z] += p[x] * channel.at(x, z);
  }
  return out;
}

int Sample(const Channel& channel, int x, RngStream& rng) {
  if (x < 0 || x >= channel.input_size()) {
    throw std::invalid_argument("sample: input symbol out of range");
  }
  return rng.Discrete(channel.row(x));
}

}  // namespace ldp
