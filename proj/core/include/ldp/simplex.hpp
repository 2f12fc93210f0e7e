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

#ifndef LDP_SIMPLEX_HPP_
#define LDP_SIMPLEX_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ldp {

// maximize  sum_j cost(j) x_j
// subject to  sum_j column(j) x_j = b,  x >= 0
//
// Dense primal simplex with Bland's anti-cycling rule, sized for problems
// with few rows and exponentially many columns: columns are produced on
// demand by a callback instead of being stored.
struct SimplexProblem {
  int num_rows = 0;
  std::uint64_t num_columns = 0;
  // Writes column j (num_rows entries) into the provided buffer.
  std::function<void(std::uint64_t j, std::span<double> out)> column;
  std::function<double(std::uint64_t j)> cost;
  std::vector<double> rhs;
  // A feasible starting basis (num_rows column indices).
  std::vector<std::uint64_t> initial_basis;
};

struct SimplexSolution {
  double objective = 0.0;
  // Basic variables with strictly positive value, sorted by column index.
  std::vector<std::pair<std::uint64_t, double>> solution;
  int iterations = 0;
};

SimplexSolution SolveSimplex(const SimplexProblem& problem);

}  // namespace ldp

#endif  // LDP_SIMPLEX_HPP_
