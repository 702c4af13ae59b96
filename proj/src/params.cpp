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

#include "privrel/params.hpp"

#include <cmath>

#include "privrel/error.hpp"

namespace privrel {

namespace {

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0)) {
    fail(ErrorCode::kInvalidArgument,
         std::string(name) + " must lie strictly in (0,1), got " +
             std::to_string(v));
  }
}

}  // namespace

void ReleaseParams::validate() const {
  check_open_unit(alpha, "alpha");
  check_open_unit(beta, "beta");
  check_open_unit(gamma, "gamma");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorCode::kInvalidArgument,
         "epsilon must be positive, got " + std::to_string(epsilon));
  }
}

ParameterProfile ParameterProfile::theory() {
  ParameterProfile p;
  p.name = "theory";
  p.c_nprime = 4410;
  p.c_biter = 100;
  p.c_dbsize = 210;
  p.c_degree_sparse = 1;
  p.c_degree_full = 1;
  p.c_budget = 1;
  return p;
}

ParameterProfile ParameterProfile::desk() { return ParameterProfile{}; }

std::int64_t checked_ceil(double value, const char* field) {
  if (!std::isfinite(value)) {
    fail(ErrorCode::kParameterOverflow,
         std::string("derived parameter '") + field + "' is not finite");
  }
  const double snapped = std::ceil(value - 1e-9);
  if (snapped > 9.0e18) {
    fail(ErrorCode::kParameterOverflow,
         std::string("derived parameter '") + field + "' overflows: " +
             std::to_string(value));
  }
  return static_cast<std::int64_t>(snapped);
}

DerivedParams derive_params(const ReleaseParams& rp,
                            std::uint64_t query_space_size,
                            const LearnerBudgetFn& learner_budget,
                            BudgetMode budget_mode,
                            const ParameterProfile& profile) {
  rp.validate();
  if (query_space_size < 2) {
    fail(ErrorCode::kInvalidArgument, "query space size must be >= 2");
  }

  DerivedParams dp;
  dp.budget_mode = budget_mode;
  dp.k = checked_ceil(3.0 / rp.alpha, "k");
  dp.thresholds.reserve(static_cast<std::size_t>(dp.k));
  for (std::int64_t i = 1; i <= dp.k; ++i) {
    dp.thresholds.push_back(static_cast<double>(i) /
                            static_cast<double>(dp.k + 1));
  }
  dp.gamma_prime = rp.gamma / static_cast<double>(dp.k);
  dp.beta_prime = rp.beta / (6.0 * static_cast<double>(dp.k));

  dp.n_prime = checked_ceil(
      profile.c_nprime * std::log(static_cast<double>(query_space_size)) /
          (rp.alpha * rp.alpha),
      "n_prime");

  dp.b_base = learner_budget(dp.n_prime, dp.gamma_prime, dp.beta_prime);
  if (dp.b_base < 1) {
    fail(ErrorCode::kInvalidArgument,
         "learner budget function returned " + std::to_string(dp.b_base));
  }

  dp.b_iter = checked_ceil(profile.c_biter * static_cast<double>(dp.b_base) *
                               std::log(1.0 / dp.beta_prime) / rp.gamma,
                           "b_iter");
  if (dp.b_base > dp.b_iter) {
    // The per-iteration accounting (b_iter sample queries plus at most
    // b_base evaluation queries) requires b_base <= b_iter.
    fail(ErrorCode::kInvalidArgument,
         "profile yields b_base > b_iter (" + std::to_string(dp.b_base) +
             " > " + std::to_string(dp.b_iter) +
             "); raise c_biter so that c_biter*ln(1/beta')/gamma >= 1");
  }

  const double iter_factor =
      budget_mode == BudgetMode::kSamplingOnly
          ? 2.0
          : 2.0 * static_cast<double>(dp.k);
  dp.b_total =
      checked_ceil(iter_factor * static_cast<double>(dp.b_iter), "b_total");

  dp.min_db_size = checked_ceil(
      profile.c_dbsize * static_cast<double>(dp.b_total) *
          std::log(10.0 * static_cast<double>(dp.b_total) / rp.beta) /
          (rp.epsilon * rp.alpha),
      "min_db_size");
  return dp;
}

void check_db_size(const Database& db, const DerivedParams& dp) {
  if (static_cast<std::int64_t>(db.size()) < dp.min_db_size) {
    fail(ErrorCode::kDatabaseTooSmall,
         "database has " + std::to_string(db.size()) +
             " items but the derived parameters require at least " +
             std::to_string(dp.min_db_size));
  }
}

}  // namespace privrel
