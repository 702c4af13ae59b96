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

#include "privrel/oracle.hpp"

#include <cmath>
#include <utility>

#include "privrel/error.hpp"

namespace privrel {

double laplace_sample(double scale, Rng& rng) {
  if (!(scale > 0)) {
    fail(ErrorCode::kInvalidArgument, "Laplace scale must be positive");
  }
  const double u = rng.next_open_unit();
  const double centered = u - 0.5;
  const double sign = centered < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(centered));
}

namespace {

OracleConfig validated(const OracleConfig& config, std::size_t n) {
  if (!(config.tolerance > 0) || !(config.tolerance < 1)) {
    fail(ErrorCode::kInvalidArgument, "oracle tolerance must be in (0,1)");
  }
  if (config.budget < 1) {
    fail(ErrorCode::kInvalidArgument, "oracle budget must be positive");
  }
  if (!(config.epsilon > 0)) {
    fail(ErrorCode::kInvalidArgument, "oracle epsilon must be positive");
  }
  (void)n;
  return config;
}

}  // namespace

ThresholdOracle::ThresholdOracle(const Database& db, const PredicateSpec& pred,
                                 const OracleConfig& config, Rng rng)
    : db_(db),
      pred_(pred),
      config_(validated(config, db.size())),
      scale_(static_cast<double>(config.budget) /
             (config.epsilon * static_cast<double>(db.size()))),
      noise_([gen = std::move(rng)](double scale) mutable {
        return laplace_sample(scale, gen);
      }) {}

ThresholdOracle::ThresholdOracle(const Database& db, const PredicateSpec& pred,
                                 const OracleConfig& config, NoiseSource noise)
    : db_(db),
      pred_(pred),
      config_(validated(config, db.size())),
      scale_(static_cast<double>(config.budget) /
             (config.epsilon * static_cast<double>(db.size()))),
      noise_(std::move(noise)) {}

double ThresholdOracle::ensure_cached(const BitVec& q) {
  auto it = cache_.find(q);
  if (it != cache_.end()) return it->second;
  const double noisy = counting_query(db_, pred_, q) + noise_(scale_);
  cache_.emplace(q, noisy);
  return noisy;
}

OracleAnswer ThresholdOracle::query(const BitVec& q, double t) {
  if (!(t >= 0) || !(t < 1)) {
    fail(ErrorCode::kInvalidArgument,
         "threshold must lie in [0,1), got " + std::to_string(t));
  }
  if (exhausted_) return OracleAnswer::kBudgetExceeded;
  // Only a fresh q spends budget; reusing a cached A_q is free.
  if (!cache_.contains(q) &&
      static_cast<std::int64_t>(cache_.size()) >= config_.budget) {
    exhausted_ = true;
    return OracleAnswer::kBudgetExceeded;
  }
  const double noisy = ensure_cached(q);
  const double margin = 2.0 * config_.tolerance / 3.0;
  if (noisy >= t + margin) return OracleAnswer::kOne;
  if (noisy <= t - margin) return OracleAnswer::kZero;
  return OracleAnswer::kBottom;
}

PrivacyReport ThresholdOracle::report() const {
  PrivacyReport r;
  r.distinct_queries = static_cast<std::int64_t>(cache_.size());
  r.budget = config_.budget;
  r.laplace_scale = scale_;
  r.epsilon = config_.epsilon;
  r.exhausted = exhausted_;
  return r;
}

}  // namespace privrel
