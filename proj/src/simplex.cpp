// Copyright 2026 The privrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privrel/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "privrel/error.hpp"

namespace privrel {

namespace {

constexpr double kDualTolerance = 1e-7;
constexpr double kPivotTolerance = 1e-8;
constexpr double kZero = 1e-11;
constexpr int kRefactorInterval = 512;
constexpr int kStallLimit = 200;

enum class VarStatus : std::uint8_t { kAtLower, kAtUpper, kBasic };

class BoxSimplex {
 public:
  BoxSimplex(std::size_t rows, std::span<const SparseColumn> columns,
             std::span<const double> costs, std::span<const double> upper)
      : rows_(rows), columns_(columns), costs_(costs), upper_(upper) {
    const std::size_t n = columns_.size();
    status_.assign(n + rows_, VarStatus::kAtLower);
    basis_.resize(rows_);
    basis_values_.assign(rows_, 0.0);
    binv_.assign(rows_ * rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      // Artificial columns (index n + r) form the identity start basis;
      // their bounds are [0,0], so they are pinned once replaced.
      basis_[r] = static_cast<std::int32_t>(n + r);
      status_[n + r] = VarStatus::kBasic;
      binv_[r * rows_ + r] = 1.0;
    }
  }

  BoxLpResult run(std::int64_t max_iterations);

 private:
  double cost_of(std::int32_t j) const {
    return j < static_cast<std::int32_t>(columns_.size())
               ? costs_[static_cast<std::size_t>(j)]
               : 0.0;
  }
  double upper_of(std::int32_t j) const {
    return j < static_cast<std::int32_t>(columns_.size())
               ? upper_[static_cast<std::size_t>(j)]
               : 0.0;
  }

  // w = Binv * column(j).
  void ftran(std::int32_t j, std::vector<double>& w) const {
    std::fill(w.begin(), w.end(), 0.0);
    if (j < static_cast<std::int32_t>(columns_.size())) {
      for (const auto& [row, v] : columns_[static_cast<std::size_t>(j)].entries) {
        const double* col = binv_.data() + static_cast<std::size_t>(row);
        for (std::size_t i = 0; i < rows_; ++i) {
          w[i] += col[i * rows_] * v;
        }
      }
    } else {
      const std::size_t row = static_cast<std::size_t>(j) - columns_.size();
      for (std::size_t i = 0; i < rows_; ++i) {
        w[i] = binv_[i * rows_ + row];
      }
    }
  }

  void compute_duals(std::vector<double>& pi) const {
    std::fill(pi.begin(), pi.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double c = cost_of(basis_[i]);
      if (c == 0.0) continue;
      const double* row = binv_.data() + i * rows_;
      for (std::size_t r = 0; r < rows_; ++r) pi[r] += c * row[r];
    }
  }

  double reduced_cost(std::int32_t j, const std::vector<double>& pi) const {
    double dot = 0;
    for (const auto& [row, v] : columns_[static_cast<std::size_t>(j)].entries) {
      dot += pi[static_cast<std::size_t>(row)] * v;
    }
    return costs_[static_cast<std::size_t>(j)] - dot;
  }

  // Rebuild the dense inverse from the basis columns (Gauss-Jordan with
  // partial pivoting) and recompute the basic values.
  bool refactorize();
  void recompute_basis_values();

  std::size_t rows_;
  std::span<const SparseColumn> columns_;
  std::span<const double> costs_;
  std::span<const double> upper_;

  std::vector<VarStatus> status_;
  std::vector<std::int32_t> basis_;
  std::vector<double> basis_values_;
  std::vector<double> binv_;  // row-major rows_ x rows_
};

bool BoxSimplex::refactorize() {
  const std::size_t n = rows_;
  std::vector<double> m(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    const std::int32_t j = basis_[col];
    if (j < static_cast<std::int32_t>(columns_.size())) {
      for (const auto& [row, v] : columns_[static_cast<std::size_t>(j)].entries) {
        m[static_cast<std::size_t>(row) * n + col] = v;
      }
    } else {
      m[(static_cast<std::size_t>(j) - columns_.size()) * n + col] = 1.0;
    }
  }
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double best = std::abs(m[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(m[r * n + col]);
      if (v > best) {
        best = v;
        pivot_row = r;
      }
    }
    if (best < kPivotTolerance) return false;
    if (pivot_row != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m[pivot_row * n + c], m[col * n + c]);
        std::swap(inv[pivot_row * n + c], inv[col * n + c]);
      }
    }
    const double p = m[col * n + col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col * n + c] /= p;
      inv[col * n + c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m[r * n + c] -= f * m[col * n + c];
        inv[r * n + c] -= f * inv[col * n + c];
      }
    }
  }
  binv_ = std::move(inv);
  recompute_basis_values();
  return true;
}

void BoxSimplex::recompute_basis_values() {
  // rhs = -sum over nonbasic-at-upper columns of upper_j * a_j.
  std::vector<double> rhs(rows_, 0.0);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (status_[j] != VarStatus::kAtUpper) continue;
    const double u = upper_[j];
    if (u == 0.0) continue;
    for (const auto& [row, v] : columns_[j].entries) {
      rhs[static_cast<std::size_t>(row)] -= u * v;
    }
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0;
    const double* row = binv_.data() + i * rows_;
    for (std::size_t r = 0; r < rows_; ++r) acc += row[r] * rhs[r];
    basis_values_[i] = acc;
  }
}

BoxLpResult BoxSimplex::run(std::int64_t max_iterations) {
  BoxLpResult result;
  const std::size_t n = columns_.size();
  if (max_iterations <= 0) {
    max_iterations = 20000 + 40 * static_cast<std::int64_t>(n + rows_);
  }

  std::vector<double> pi(rows_);
  std::vector<double> w(rows_);
  int pivots_since_refactor = 0;
  int stall = 0;
  int tiny_pivot_retries = 0;
  bool bland = false;

  for (std::int64_t iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter;
    compute_duals(pi);

    // Pricing. Artificial columns never re-enter.
    std::int32_t entering = -1;
    double best_score = kDualTolerance;
    int direction = +1;
    for (std::size_t j = 0; j < n; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      if (upper_[j] == 0.0) continue;  // fixed at zero
      const double d = reduced_cost(static_cast<std::int32_t>(j), pi);
      if (status_[j] == VarStatus::kAtLower && d > kDualTolerance) {
        if (bland) {
          entering = static_cast<std::int32_t>(j);
          direction = +1;
          break;
        }
        if (d > best_score) {
          best_score = d;
          entering = static_cast<std::int32_t>(j);
          direction = +1;
        }
      } else if (status_[j] == VarStatus::kAtUpper && d < -kDualTolerance) {
        if (bland) {
          entering = static_cast<std::int32_t>(j);
          direction = -1;
          break;
        }
        if (-d > best_score) {
          best_score = -d;
          entering = static_cast<std::int32_t>(j);
          direction = -1;
        }
      }
    }

    if (entering < 0) {
      // Optimal. Assemble the answer.
      result.status = BoxLpResult::Status::kOptimal;
      result.duals = pi;
      result.solution.assign(n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (status_[j] == VarStatus::kAtUpper) result.solution[j] = upper_[j];
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < static_cast<std::int32_t>(n)) {
          result.solution[static_cast<std::size_t>(basis_[i])] =
              basis_values_[i];
        }
      }
      double obj = 0;
      for (std::size_t j = 0; j < n; ++j) obj += costs_[j] * result.solution[j];
      result.objective = obj;
      return result;
    }

    ftran(entering, w);

    // Ratio test: entering moves by theta in `direction`; basic values
    // change by -direction * theta * w.
    const double bound_gap = upper_of(entering);
    double theta = bound_gap;
    std::int32_t leaving_pos = -1;  // -1: entering flips bound to bound
    bool leaving_to_upper = false;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double s = direction * w[i];
      const std::int32_t bi = basis_[i];
      if (s > kPivotTolerance) {
        const double room = basis_values_[i];  // lower bounds are all 0
        const double t = room / s;
        if (t < theta - kZero ||
            (t < theta + kZero && leaving_pos >= 0 &&
             std::abs(s) > std::abs(direction * w[static_cast<std::size_t>(
                                                     leaving_pos)]))) {
          theta = std::max(t, 0.0);
          leaving_pos = static_cast<std::int32_t>(i);
          leaving_to_upper = false;
        }
      } else if (s < -kPivotTolerance) {
        const double room = upper_of(bi) - basis_values_[i];
        const double t = room / (-s);
        if (t < theta - kZero ||
            (t < theta + kZero && leaving_pos >= 0 &&
             std::abs(s) > std::abs(direction * w[static_cast<std::size_t>(
                                                     leaving_pos)]))) {
          theta = std::max(t, 0.0);
          leaving_pos = static_cast<std::int32_t>(i);
          leaving_to_upper = true;
        }
      }
    }

    stall = theta <= kZero ? stall + 1 : 0;
    if (stall > kStallLimit) bland = true;

    if (leaving_pos >= 0 &&
        std::abs(w[static_cast<std::size_t>(leaving_pos)]) < kPivotTolerance) {
      // Every blocking row has a tiny pivot; rebuild the inverse and try
      // again with fresh numbers.
      if (++tiny_pivot_retries > 3 || !refactorize()) {
        result.status = BoxLpResult::Status::kNumericalFailure;
        return result;
      }
      continue;
    }
    tiny_pivot_retries = 0;

    // Apply the move.
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_values_[i] -= direction * theta * w[i];
    }

    if (leaving_pos < 0) {
      // Bound-to-bound flip, basis unchanged.
      status_[static_cast<std::size_t>(entering)] =
          direction > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      continue;
    }

    const std::size_t r = static_cast<std::size_t>(leaving_pos);
    const std::int32_t leaving = basis_[r];
    status_[static_cast<std::size_t>(leaving)] =
        leaving_to_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
    status_[static_cast<std::size_t>(entering)] = VarStatus::kBasic;
    basis_[r] = entering;
    basis_values_[r] =
        (direction > 0 ? 0.0 : upper_of(entering)) + direction * theta;

    // Elementary update of the inverse: divide pivot row, sweep the rest.
    const double pivot = w[r];
    double* prow = binv_.data() + r * rows_;
    for (std::size_t c = 0; c < rows_; ++c) prow[c] /= pivot;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = w[i];
      if (f == 0.0) continue;
      double* irow = binv_.data() + i * rows_;
      for (std::size_t c = 0; c < rows_; ++c) irow[c] -= f * prow[c];
    }

    if (++pivots_since_refactor >= kRefactorInterval) {
      pivots_since_refactor = 0;
      if (!refactorize()) {
        result.status = BoxLpResult::Status::kNumericalFailure;
        return result;
      }
    }
  }

  result.status = BoxLpResult::Status::kIterationLimit;
  return result;
}

}  // namespace

BoxLpResult solve_zero_rhs_box_lp(std::size_t rows,
                                  std::span<const SparseColumn> columns,
                                  std::span<const double> costs,
                                  std::span<const double> upper,
                                  std::int64_t max_iterations) {
  if (columns.size() != costs.size() || columns.size() != upper.size()) {
    fail(ErrorCode::kInvalidArgument, "LP column/cost/bound sizes disagree");
  }
  for (double u : upper) {
    if (!(u >= 0) || !std::isfinite(u)) {
      fail(ErrorCode::kInvalidArgument, "LP upper bounds must be finite and >= 0");
    }
  }
  for (const SparseColumn& col : columns) {
    for (const auto& [row, v] : col.entries) {
      if (row < 0 || static_cast<std::size_t>(row) >= rows) {
        fail(ErrorCode::kInvalidArgument, "LP column entry row out of range");
      }
      (void)v;
    }
  }
  BoxSimplex solver(rows, columns, costs, upper);
  return solver.run(max_iterations);
}

}  // namespace privrel
