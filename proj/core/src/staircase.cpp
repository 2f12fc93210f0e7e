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
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

void CheckDimension(int d, int cap) {
  if (d < 1) throw std::invalid_argument("alphabet size d must be positive");
  if (d > cap) {
    throw std::invalid_argument("alphabet size d=" + std::to_string(d) +
                                " exceeds cap " + std::to_string(cap) +
                                " (matrix has 2^d columns)");
  }
}

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("privacy budget alpha must be >= 0");
  }
}

}  // namespace

std::vector<int> StaircasePattern::f_plus() const {
  std::vector<int> out;
  for (int j = 0; j < index_.d; ++j) {
    if (index_.BitSet(j)) out.push_back(j);
  }
  return out;
}

std::vector<double> StaircasePattern::values() const {
  std::vector<double> out(index_.d);
  for (int j = 0; j < index_.d; ++j) out[j] = value(j);
  return out;
}

StaircasePattern Pattern(int d, std::uint64_t beta, double alpha, int cap) {
  CheckDimension(d, cap);
  CheckAlpha(alpha);
  if (beta >= (std::uint64_t{1} << d)) {
    throw std::invalid_argument("pattern index beta=" + std::to_string(beta) +
                                " out of range for d=" + std::to_string(d));
  }
  return StaircasePattern(PatternIndex{beta, d}, alpha, std::exp(alpha));
}

StaircasePattern PatternForSet(int d, const std::vector<int>& f_plus,
                               double alpha, int cap) {
  CheckDimension(d, cap);
  CheckAlpha(alpha);
  std::uint64_t beta = 0;
  for (int j : f_plus) {
    if (j < 0 || j >= d) {
      throw std::invalid_argument("F+ element " + std::to_string(j) +
                                  " outside {0,...," + std::to_string(d - 1) +
                                  "}");
    }
    beta |= std::uint64_t{1} << j;
  }
  return StaircasePattern(PatternIndex{beta, d}, alpha, std::exp(alpha));
}

StaircaseMatrix::StaircaseMatrix(int d, double alpha, int cap)
    : d_(d), alpha_(alpha), exp_alpha_(std::exp(alpha)) {
  CheckDimension(d, cap);
  CheckAlpha(alpha);
}

StaircasePattern StaircaseMatrix::column(std::uint64_t beta) const {
  if (beta >= num_columns()) {
    throw std::invalid_argument("column index out of range");
  }
  return StaircasePattern(PatternIndex{beta, d_}, alpha_, exp_alpha_);
}

}  // namespace ldp
