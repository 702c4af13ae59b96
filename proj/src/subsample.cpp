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

#include "privrel/subsample.hpp"

#include <cmath>

#include "privrel/error.hpp"
#include "privrel/params.hpp"

namespace privrel {

SubsampleReport subsample_verify(const Database& db, const PredicateSpec& pred,
                                 std::span<const BitVec> queries, double alpha,
                                 std::size_t trials, Rng& rng) {
  if (queries.empty()) {
    fail(ErrorCode::kInvalidArgument, "subsample_verify needs a nonempty query set");
  }
  SubsampleReport report;
  report.trials = trials;
  report.subsample_size = static_cast<std::size_t>(checked_ceil(
      10.0 * std::log(static_cast<double>(queries.size())) / (alpha * alpha),
      "subsample_size"));

  std::vector<double> exact(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    exact[i] = counting_query(db, pred, queries[i]);
  }

  std::vector<BitVec> sample;
  sample.reserve(report.subsample_size);
  for (std::size_t t = 0; t < trials; ++t) {
    sample.clear();
    for (std::size_t j = 0; j < report.subsample_size; ++j) {
      sample.push_back(db.item(static_cast<std::size_t>(
          rng.next_below(db.size()))));
    }
    const Database sub(db.dimension(), sample);
    double max_error = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const double err = std::abs(counting_query(sub, pred, queries[i]) - exact[i]);
      if (err > max_error) max_error = err;
    }
    if (max_error < alpha) ++report.successes;
    if (max_error > report.worst_max_error) report.worst_max_error = max_error;
  }
  report.success_fraction =
      trials == 0 ? 0 : static_cast<double>(report.successes) /
                            static_cast<double>(trials);
  return report;
}

}  // namespace privrel
