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

#include "ldp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldp {

namespace {

constexpr double kReducedCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;

// Dense LU solve with partial pivoting; the basis is at most ~20x20.
class LuSolver {
 public:
  explicit LuSolver(std::vector<double> a, int n) : a_(std::move(a)), n_(n), perm_(n) {
    for (int i = 0; i < n_; ++i) perm_[i] = i;
    for (int k = 0; k < n_; ++k) {
      int piv = k;
      for (int i = k + 1; i < n_; ++i) {
        if (std::abs(At(i, k)) > std::abs(At(piv, k))) piv = i;
      }
      if (std::abs(At(piv, k)) < 1e-300) {
        throw std::runtime_error("simplex: singular basis matrix");
      }
      if (piv != k) {
        std::swap(perm_[piv], perm_[k]);
        for (int j = 0; j < n_; ++j) std::swap(At(piv, j), At(k, j));
      }
      for (int i = k + 1; i < n_; ++i) {
        At(i, k) /= At(k, k);
        const double f = At(i, k);
        for (int j = k + 1; j < n_; ++j) At(i, j) -= f * At(k, j);
      }
    }
  }

  // Solves A x = b.
  std::vector<double> Solve(std::span<const double> b) const {
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n_; ++i) {
      for (int j = 0; j < i; ++j) x[i] -= At(i, j) * x[j];
    }
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) x[i] -= At(i, j) * x[j];
      x[i] /= At(i, i);
    }
    return x;
  }

  // Solves A^T y = c.
  std::vector<double> SolveTransposed(std::span<const double> c) const {
    std::vector<double> y(n_);
    for (int i = 0; i < n_; ++i) y[i] = c[i];
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < i; ++j) y[i] -= At(j, i) * y[j];
      y[i] /= At(i, i);
    }
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) y[i] -= At(j, i) * y[j];
    }
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) out[perm_[i]] = y[i];
    return out;
  }

 private:
  double& At(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double At(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  std::vector<double> a_;
  int n_;
  std::vector<int> perm_;
};

}  // namespace

SimplexSolution SolveSimplex(const SimplexProblem& problem) {
  const int m = problem.num_rows;
  if (static_cast<int>(problem.initial_basis.size()) != m) {
    throw std::invalid_argument("simplex: initial basis must have num_rows columns");
  }
  std::vector<std::uint64_t> basis = problem.initial_basis;
  std::vector<double> col(m);

  // Generous bound; Bland's rule guarantees finite termination well before.
  const std::uint64_t max_iterations =
      64 * (problem.num_columns + 16) * static_cast<std::uint64_t>(m + 1);

  SimplexSolution result;
  for (std::uint64_t iter = 0;; ++iter) {
    if (iter > max_iterations) {
      throw std::runtime_error("simplex: iteration limit exceeded");
    }
    // Rebuild the basis factorization from scratch each iteration; the
    // basis is tiny and refactorizing avoids drift in long degenerate runs.
    std::vector<double> bmat(static_cast<std::size_t>(m) * m);
    std::vector<double> cb(m);
    for (int k = 0; k < m; ++k) {
      problem.column(basis[k], col);
      for (int i = 0; i < m; ++i) bmat[static_cast<std::size_t>(i) * m + k] = col[i];
      cb[k] = problem.cost(basis[k]);
    }
    const LuSolver lu(std::move(bmat), m);
    const std::vector<double> xb = lu.Solve(problem.rhs);
    const std::vector<double> y = lu.SolveTransposed(cb);

    // Bland: enter the lowest-index column with positive reduced cost.
    std::int64_t entering = -1;
    for (std::uint64_t j = 0; j < problem.num_columns; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      problem.column(j, col);
      double rc = problem.cost(j);
      for (int i = 0; i < m; ++i) rc -= y[i] * col[i];
      if (rc > kReducedCostTol) {
        entering = static_cast<std::int64_t>(j);
        break;
      }
    }
    if (entering < 0) {
      double obj = 0.0;
      for (int k = 0; k < m; ++k) obj += cb[k] * xb[k];
      result.objective = obj;
      result.iterations = static_cast<int>(iter);
      for (int k = 0; k < m; ++k) {
        if (xb[k] > kPivotTol) result.solution.emplace_back(basis[k], xb[k]);
      }
      std::sort(result.solution.begin(), result.solution.end());
      return result;
    }

    problem.column(static_cast<std::uint64_t>(entering), col);
    const std::vector<double> dir = lu.Solve(col);

    // Ratio test; ties resolved toward the lowest basis column index (Bland).
    double step = std::numeric_limits<double>::infinity();
    int leaving = -1;
    for (int k = 0; k < m; ++k) {
      if (dir[k] <= kPivotTol) continue;
      const double ratio = std::max(xb[k], 0.0) / dir[k];
      if (ratio < step - 1e-15 ||
          (ratio < step + 1e-15 && (leaving < 0 || basis[k] < basis[leaving]))) {
        step = ratio;
        leaving = k;
      }
    }
    if (leaving < 0) {
      throw std::runtime_error("simplex: unbounded objective");
    }
    basis[leaving] = static_cast<std::uint64_t>(entering);
  }
}

}  // namespace ldp
