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

#ifndef LDP_STAIRCASE_HPP_
#define LDP_STAIRCASE_HPP_

#include <cstdint>
#include <vector>

namespace ldp {

// Alphabet sizes are capped because a staircase matrix has 2^d columns.
// Callers never materialize the full matrix; columns are generated on demand.
inline constexpr int kDefaultAlphabetCap = 20;

// Dyadic index of one extremal pattern: beta in [0, 2^d).
// Bit j of beta tells whether input symbol j sits in the e^alpha level set.
struct PatternIndex {
  std::uint64_t beta = 0;
  int d = 0;

  bool BitSet(int j) const { return ((beta >> j) & 1u) != 0; }
};

// One vertex r_beta of the hyperrectangle [1, e^alpha]^d: every coordinate is
// exactly 1 or exactly e^alpha. Immutable; e^alpha is computed once at
// construction and alpha stays the canonical quantity.
class StaircasePattern {
 public:
  StaircasePattern(PatternIndex index, double alpha, double exp_alpha)
      : index_(index), alpha_(alpha), exp_alpha_(exp_alpha) {}

  const PatternIndex& index() const { return index_; }
  double alpha() const { return alpha_; }
  double exp_alpha() const { return exp_alpha_; }
  int size() const { return index_.d; }

  // (r_beta)_j: e^alpha on F+, 1 on F-.
  double value(int j) const { return index_.BitSet(j) ? exp_alpha_ : 1.0; }

  bool in_f_plus(int j) const { return index_.BitSet(j); }

  std::vector<int> f_plus() const;
  std::vector<double> values() const;

 private:
  PatternIndex index_;
  double alpha_;
  double exp_alpha_;
};

// Pattern r_beta for the given dyadic index.
// Preconditions: 0 <= beta < 2^d, alpha >= 0, d <= cap.
StaircasePattern Pattern(int d, std::uint64_t beta, double alpha,
                         int cap = kDefaultAlphabetCap);

// The unique pattern whose e^alpha level set equals f_plus
// (beta = sum of 2^j over j in f_plus).
StaircasePattern PatternForSet(int d, const std::vector<int>& f_plus,
                               double alpha, int cap = kDefaultAlphabetCap);

// Lazy view over all 2^d columns of the staircase pattern matrix.
// Column 0 is all-ones, column 2^d - 1 is all-e^alpha.
class StaircaseMatrix {
 public:
  StaircaseMatrix(int d, double alpha, int cap = kDefaultAlphabetCap);

  int d() const { return d_; }
  double alpha() const { return alpha_; }
  double exp_alpha() const { return exp_alpha_; }
  std::uint64_t num_columns() const { return std::uint64_t{1} << d_; }

  StaircasePattern column(std::uint64_t beta) const;

  // Entry (j, beta) without building the column.
  double entry(int j, std::uint64_t beta) const {
    return ((beta >> j) & 1u) ? exp_alpha_ : 1.0;
  }

  class Iterator {
   public:
    Iterator(const StaircaseMatrix* m, std::uint64_t beta)
        : matrix_(m), beta_(beta) {}
    StaircasePattern operator*() const { return matrix_->column(beta_); }
    Iterator& operator++() {
      ++beta_;
      return *this;
    }
    bool operator!=(const Iterator& other) const {
      return beta_ != other.beta_;
    }

   private:
    const StaircaseMatrix* matrix_;
    std::uint64_t beta_;
  };

  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, num_columns()); }

 private:
  int d_;
  double alpha_;
  double exp_alpha_;
};

}  // namespace ldp

#endif  // LDP_STAIRCASE_HPP_
