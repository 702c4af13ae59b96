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

#ifndef PRIVREL_SIMPLEX_HPP
#define PRIVREL_SIMPLEX_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace privrel {

// One column of the constraint matrix, sparse.
struct SparseColumn {
  std::vector<std::pair<std::int32_t, double>> entries;
};

struct BoxLpResult {
  enum class Status { kOptimal, kIterationLimit, kNumericalFailure };
  Status status = Status::kNumericalFailure;
  double objective = 0;
  std::vector<double> duals;     // one multiplier per row
  std::vector<double> solution;  // one value per column
  std::int64_t iterations = 0;
};

// Maximize c'x subject to  sum_j x_j col_j = 0  and  0 <= x_j <= upper_j.
//
// Bounded-variable revised simplex with a dense basis inverse sized by the
// row count, so it handles tens of thousands of columns as long as the row
// count stays in the low thousands. x = 0 is always feasible, which is why
// no phase-1 is needed. Never unbounded (all variables are boxed).
BoxLpResult solve_zero_rhs_box_lp(std::size_t rows,
                                  std::span<const SparseColumn> columns,
                                  std::span<const double> costs,
                                  std::span<const double> upper,
                                  std::int64_t max_iterations = 0);

}  // namespace privrel

#endif  // PRIVREL_SIMPLEX_HPP
