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

#ifndef LDP_RNG_HPP_
#define LDP_RNG_HPP_

#include <cstdint>
#include <span>

namespace ldp {

// Counter-based pseudo-random stream built on the SplitMix64 generator.
//
// A stream is addressed by (seed, key_a, key_b). Two streams with different
// keys are statistically independent for Monte Carlo purposes, which makes
// sampling reproducible under any parallel schedule: task (g, r) always draws
// the same sequence no matter which worker runs it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  // Derives the stream addressed by (seed, key_a, key_b).
  static RngStream Keyed(std::uint64_t seed, std::uint64_t key_a = 0,
                         std::uint64_t key_b = 0) {
    std::uint64_t s = Mix(seed + kGamma);
    s = Mix(s ^ Mix(key_a + kGamma));
    s = Mix(s ^ Mix(key_b + 2 * kGamma));
    return RngStream(s);
  }

  std::uint64_t NextU64() {
    state_ += kGamma;
    return Mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextDouble(); }

  bool Bernoulli(double p) { return NextDouble() < p; }

  // Samples an index from an (unnormalized is not allowed) probability vector
  // by inverse-CDF walk. The final index absorbs any rounding slack.
  int Discrete(std::span<const double> probs) {
    const double u = NextDouble();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  // SplitMix64 finalizer (Steele, Lea, Flood 2014).
  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace ldp

#endif  // LDP_RNG_HPP_
