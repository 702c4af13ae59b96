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

#ifndef PRIVREL_ORACLE_HPP
#define PRIVREL_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <unordered_map>

#include "privrel/bitvec.hpp"
#include "privrel/database.hpp"
#include "privrel/predicate.hpp"
#include "privrel/rng.hpp"

namespace privrel {

// Zero-mean Laplace draw via inverse CDF on a uniform draw; deterministic
// given the rng state.
double laplace_sample(double scale, Rng& rng);

// Bottom is a legitimate in-protocol answer (query too close to the
// threshold); BudgetExceeded is terminal and is kept distinct so that the
// reduction's rejection statistics are never polluted by exhaustion.
enum class OracleAnswer { kZero, kOne, kBottom, kBudgetExceeded };

struct OracleConfig {
  double tolerance = 0;     // the oracle's own alpha; reduction passes alpha/7
  std::int64_t budget = 0;  // bound on distinct queries
  double epsilon = 0;
  // Laplace scale is budget/(epsilon*n) with n the database size.
};

struct PrivacyReport {
  std::int64_t distinct_queries = 0;
  std::int64_t budget = 0;
  double laplace_scale = 0;
  double epsilon = 0;
  bool exhausted = false;
};

// The budgeted threshold oracle: the sole channel through which the rest
// of the engine touches the sensitive database. Noisy answers A_q are
// sampled once per distinct query and reused for every threshold. Not
// thread-safe; hand the whole object between threads if needed.
class ThresholdOracle {
 public:
  // A noise source maps a Laplace scale to a noise value. Tests inject
  // deterministic sources; production uses laplace_sample on a dedicated
  // rng stream.
  using NoiseSource = std::function<double(double scale)>;

  ThresholdOracle(const Database& db, const PredicateSpec& pred,
                  const OracleConfig& config, Rng rng);
  ThresholdOracle(const Database& db, const PredicateSpec& pred,
                  const OracleConfig& config, NoiseSource noise);

  // Answers (q, t) with t in [0,1). Consumes one unit of budget the first
  // time a given q is seen; all later thresholds reuse the cached noisy
  // answer.
  OracleAnswer query(const BitVec& q, double t);

  PrivacyReport report() const;

  double laplace_scale() const { return scale_; }

  // Cached noisy value A_q, if q has been asked. Exposed for transcript
  // inspection and the conditioned agreement tests.
  bool has_cached(const BitVec& q) const { return cache_.contains(q); }
  double cached_noisy_answer(const BitVec& q) const { return cache_.at(q); }

 private:
  double ensure_cached(const BitVec& q);

  const Database& db_;  // not owned; must outlive the oracle
  PredicateSpec pred_;
  OracleConfig config_;
  double scale_;
  NoiseSource noise_;
  std::unordered_map<BitVec, double, BitVecHash> cache_;
  bool exhausted_ = false;
};

}  // namespace privrel

#endif  // PRIVREL_ORACLE_HPP
