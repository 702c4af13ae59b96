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

#include "privrel/verify.hpp"

#include <chrono>
#include <cmath>

#include "privrel/error.hpp"
#include "privrel/harness.hpp"
#include "privrel/oracle.hpp"
#include "privrel/poly.hpp"
#include "privrel/ptf.hpp"
#include "privrel/queryset.hpp"
#include "privrel/subsample.hpp"

namespace privrel {

VerifyReport verify_oracle_agreement(std::uint64_t seed,
                                     std::size_t num_queries) {
  const auto started = std::chrono::steady_clock::now();
  Rng rng(seed);

  constexpr std::size_t kDim = 16;
  constexpr std::size_t kDbSize = 1000;
  constexpr double kTolerance = 0.05;
  DatabaseSpec spec;
  spec.kind = DatabaseSpec::Kind::kBernoulli;
  spec.n = kDbSize;
  spec.p = 0.5;
  const Database db = gen_database(spec, kDim, rng.stream("data-gen"));
  const PredicateSpec pred = PredicateSpec::monotone_conjunction();

  // Injected noise bounded strictly below tolerance/3, the conditioning of
  // the agreement guarantee.
  Rng noise_rng = rng.stream("oracle-noise");
  ThresholdOracle::NoiseSource bounded_noise = [&noise_rng](double) {
    return (noise_rng.next_unit() - 0.5) * (kTolerance / 3.0) * 0.999;
  };
  OracleConfig config;
  config.tolerance = kTolerance;
  config.budget = static_cast<std::int64_t>(num_queries) + 1;
  config.epsilon = 1.0;
  ThresholdOracle oracle(db, pred, config, bounded_noise);

  Rng query_rng = rng.stream("sampling");
  std::size_t agreement_violations = 0;
  std::size_t rejection_violations = 0;
  std::size_t bottoms = 0;
  for (std::size_t i = 0; i < num_queries; ++i) {
    BitVec q(kDim);
    for (std::size_t bit = 0; bit < kDim; ++bit) {
      q.set(bit, query_rng.next_bernoulli(0.5));
    }
    const double t = query_rng.next_unit();
    const OracleAnswer answer = oracle.query(q, t);
    const double exact = counting_query(db, pred, q);
    switch (answer) {
      case OracleAnswer::kZero:
        if (exact >= t) ++agreement_violations;
        break;
      case OracleAnswer::kOne:
        if (exact < t) ++agreement_violations;
        break;
      case OracleAnswer::kBottom:
        ++bottoms;
        if (std::abs(exact - t) >= kTolerance) ++rejection_violations;
        break;
      case OracleAnswer::kBudgetExceeded:
        ++agreement_violations;
        break;
    }
  }
  const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  VerifyReport report;
  report.suite = "agreement";
  report.pass = agreement_violations == 0 && rejection_violations == 0;
  report.details = {{"queries", num_queries},
                    {"tolerance", kTolerance},
                    {"agreement_violations", agreement_violations},
                    {"rejection_violations", rejection_violations},
                    {"bottom_answers", bottoms},
                    {"elapsed_ms", elapsed_ms}};
  return report;
}

VerifyReport verify_damping_sweep() {
  const auto started = std::chrono::steady_clock::now();
  std::size_t endpoint_failures = 0;
  std::size_t bound_failures = 0;
  std::size_t degree_failures = 0;
  double worst_endpoint = 0;
  for (std::size_t k = 1; k <= 64; ++k) {
    for (const double eps : {0.1, 0.01}) {
      const DampingPoly s = damping_poly(k, eps);
      const double endpoint = std::abs(s.value(static_cast<double>(k)) - 1.0);
      worst_endpoint = std::max(worst_endpoint, endpoint);
      if (endpoint > 1e-9) ++endpoint_failures;
      for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(s.value(static_cast<double>(j))) > eps) {
          ++bound_failures;
        }
      }
      const std::size_t expected_r = static_cast<std::size_t>(
          std::ceil(std::sqrt(static_cast<double>(k)) - 1e-12));
      const std::size_t expected_e =
          static_cast<std::size_t>(std::ceil(std::log2(1.0 / eps) - 1e-12));
      if (s.expansion.degree() != expected_r * expected_e ||
          s.expansion.coefficients.back() == 0.0) {
        ++degree_failures;
      }
    }
  }
  const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  VerifyReport report;
  report.suite = "damping";
  report.pass = endpoint_failures == 0 && bound_failures == 0 &&
                degree_failures == 0;
  report.details = {{"endpoint_failures", endpoint_failures},
                    {"bound_failures", bound_failures},
                    {"degree_failures", degree_failures},
                    {"worst_endpoint_gap", worst_endpoint},
                    {"elapsed_ms", elapsed_ms}};
  return report;
}

VerifyReport verify_explicit_ptf(std::uint64_t seed, std::size_t instances) {
  const auto started = std::chrono::steady_clock::now();
  Rng rng(seed);
  const PredicateSpec pred = PredicateSpec::monotone_conjunction();
  std::size_t mismatches = 0;
  std::size_t queries_checked = 0;
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const std::size_t d = 4 + static_cast<std::size_t>(rng.next_below(9));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_below(50));
    const std::size_t k =
        1 + static_cast<std::size_t>(rng.next_below(std::min<std::size_t>(4, d)));
    const double t =
        0.1 * static_cast<double>(1 + rng.next_below(9));  // 0.1 .. 0.9
    DatabaseSpec spec;
    spec.kind = DatabaseSpec::Kind::kBernoulli;
    spec.n = n;
    spec.p = 0.5;
    const Database db =
        gen_database(spec, d, rng.stream("inst-" + std::to_string(inst)));
    const auto hypothesis = explicit_ptf(db, t, k);
    for (const BitVec& q : enumerate_bk(d, k)) {
      ++queries_checked;
      if (hypothesis->predict(q) != threshold_query(db, pred, q, t)) {
        ++mismatches;
      }
    }
  }
  const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  VerifyReport report;
  report.suite = "ptf";
  report.pass = mismatches == 0;
  report.details = {{"instances", instances},
                    {"queries_checked", queries_checked},
                    {"mismatches", mismatches},
                    {"elapsed_ms", elapsed_ms}};
  return report;
}

VerifyReport verify_subsample(std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  Rng rng(seed);
  constexpr std::size_t kDim = 8;
  constexpr double kAlpha = 0.2;
  constexpr std::size_t kTrials = 100;
  DatabaseSpec spec;
  spec.kind = DatabaseSpec::Kind::kBernoulli;
  spec.n = 5000;
  spec.p = 0.5;
  const Database db = gen_database(spec, kDim, rng.stream("data-gen"));
  const std::vector<BitVec> queries = enumerate_bk(kDim, 2);
  Rng trial_rng = rng.stream("subsample");
  const SubsampleReport sub =
      subsample_verify(db, PredicateSpec::monotone_conjunction(), queries,
                       kAlpha, kTrials, trial_rng);
  const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  VerifyReport report;
  report.suite = "subsample";
  report.pass = sub.success_fraction >= 0.5;
  report.details = {{"subsample_size", sub.subsample_size},
                    {"trials", sub.trials},
                    {"successes", sub.successes},
                    {"success_fraction", sub.success_fraction},
                    {"worst_max_error", sub.worst_max_error},
                    {"elapsed_ms", elapsed_ms}};
  return report;
}

std::vector<VerifyReport> run_verify_suite(const std::string& suite,
                                           std::uint64_t seed) {
  std::vector<VerifyReport> reports;
  const bool all = suite == "all";
  if (all || suite == "agreement") {
    reports.push_back(verify_oracle_agreement(seed, 100000));
  }
  if (all || suite == "damping") {
    reports.push_back(verify_damping_sweep());
  }
  if (all || suite == "ptf") {
    reports.push_back(verify_explicit_ptf(seed, 50));
  }
  if (all || suite == "subsample") {
    reports.push_back(verify_subsample(seed));
  }
  if (reports.empty()) {
    fail(ErrorCode::kInvalidArgument,
         "unknown verify suite: " + suite +
             " (expected agreement|damping|ptf|subsample|all)");
  }
  return reports;
}

}  // namespace privrel
