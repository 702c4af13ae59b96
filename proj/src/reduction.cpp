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

#include "privrel/reduction.hpp"

#include <chrono>

#include "privrel/error.hpp"

namespace privrel {

namespace {

nlohmann::json derived_params_json(const DerivedParams& dp) {
  return {{"k", dp.k},
          {"n_prime", dp.n_prime},
          {"gamma_prime", dp.gamma_prime},
          {"beta_prime", dp.beta_prime},
          {"b_base", dp.b_base},
          {"b_iter", dp.b_iter},
          {"b_total", dp.b_total},
          {"min_db_size", dp.min_db_size},
          {"budget_mode",
           dp.budget_mode == BudgetMode::kSamplingOnly ? "sampling_only"
                                                       : "evaluation_queries"}};
}

}  // namespace

nlohmann::json RunTranscript::to_json() const {
  nlohmann::json iters = nlohmann::json::array();
  for (const IterationRecord& it : iterations) {
    iters.push_back({{"threshold", it.threshold},
                     {"accepted", it.accepted},
                     {"accepted_fraction", it.accepted_fraction},
                     {"outcome", it.outcome},
                     {"learner", it.learner_details}});
  }
  return {{"seed", seed},
          {"derived_params", derived_params_json(params)},
          {"iterations", std::move(iters)},
          {"privacy",
           {{"distinct_queries", privacy.distinct_queries},
            {"budget", privacy.budget},
            {"laplace_scale", privacy.laplace_scale},
            {"epsilon", privacy.epsilon},
            {"exhausted", privacy.exhausted}}},
          {"early_terminated", early_terminated},
          {"constant_value", constant_value},
          {"timing", {{"wall_clock_ms", wall_clock_ms}}}};
}

PrivLearnResult run_priv_learn(ThresholdOracle& oracle,
                               const QueryDistribution& g,
                               const ReleaseParams& rp,
                               const DerivedParams& dp,
                               const ThresholdLearner& learner, Rng rng) {
  const auto started = std::chrono::steady_clock::now();
  if (learner.capability() == LearnerCapability::kNeedsRestrictedEvaluation &&
      g.access() != DistributionAccess::kSamplingAndEvaluation) {
    fail(ErrorCode::kCapability,
         "learner needs restricted evaluation access but the query "
         "distribution offers sampling only");
  }

  RunTranscript transcript;
  transcript.seed = rng.seed();
  transcript.params = dp;

  Rng sample_rng = rng.stream("sampling");
  std::vector<BitVec> samples;
  samples.reserve(static_cast<std::size_t>(dp.b_iter));
  for (std::int64_t j = 0; j < dp.b_iter; ++j) {
    samples.push_back(g.sample(sample_rng));
  }

  auto finish = [&](Synopsis synopsis) {
    transcript.privacy = oracle.report();
    transcript.wall_clock_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();
    return PrivLearnResult{std::move(synopsis), std::move(transcript)};
  };

  std::vector<std::unique_ptr<Hypothesis>> hypotheses;
  std::vector<LabeledExample> accepted;
  for (std::int64_t i = 1; i <= dp.k; ++i) {
    const double t_i = dp.thresholds[static_cast<std::size_t>(i - 1)];
    accepted.clear();
    for (const BitVec& q : samples) {
      const OracleAnswer answer = oracle.query(q, t_i);
      switch (answer) {
        case OracleAnswer::kBudgetExceeded:
          // Unreachable when the derived budget is honored; a parameter
          // bug, never a data condition.
          fail(ErrorCode::kBudgetExceeded,
               "threshold oracle budget exhausted mid-run");
        case OracleAnswer::kBottom:
          break;
        case OracleAnswer::kZero:
          accepted.push_back({q, false});
          break;
        case OracleAnswer::kOne:
          accepted.push_back({q, true});
          break;
      }
    }

    IterationRecord record;
    record.threshold = t_i;
    record.accepted = static_cast<std::int64_t>(accepted.size());
    record.accepted_fraction = static_cast<double>(accepted.size()) /
                               static_cast<double>(dp.b_iter);

    if (record.accepted_fraction < rp.gamma / 2.0) {
      record.outcome = "constant";
      transcript.iterations.push_back(std::move(record));
      transcript.early_terminated = true;
      transcript.constant_value = t_i;
      return finish(Synopsis::constant(t_i));
    }

    RestrictedEvalFn eval_query = [&](const BitVec& q) -> EvalAnswer {
      const OracleAnswer answer = oracle.query(q, t_i);
      if (answer == OracleAnswer::kBudgetExceeded) {
        fail(ErrorCode::kBudgetExceeded,
             "threshold oracle budget exhausted on an evaluation query");
      }
      if (answer == OracleAnswer::kBottom) return EvalAnswer{0.0, std::nullopt};
      const double mass = g.mass(q) * static_cast<double>(dp.b_iter) /
                          static_cast<double>(accepted.size());
      return EvalAnswer{mass, answer == OracleAnswer::kOne};
    };

    TrainRequest request;
    request.n_prime = dp.n_prime;
    request.threshold = t_i;
    request.gamma = dp.gamma_prime;
    request.beta = dp.beta_prime;
    request.examples = accepted;
    request.restricted_eval =
        learner.capability() == LearnerCapability::kNeedsRestrictedEvaluation
            ? &eval_query
            : nullptr;
    request.rng = rng.stream("learner-" + std::to_string(i));

    TrainOutcome outcome = learner.train(request);
    record.outcome = "trained";
    record.learner_details = std::move(outcome.details);
    transcript.iterations.push_back(std::move(record));
    hypotheses.push_back(std::move(outcome.hypothesis));
  }

  return finish(Synopsis::aggregated(std::move(hypotheses)));
}

PrivLearnResult priv_learn(const Database& db, const PredicateSpec& pred,
                           const QueryDistribution& g, const ReleaseParams& rp,
                           std::uint64_t query_space_size,
                           const ThresholdLearner& learner,
                           const ParameterProfile& profile, Rng rng) {
  const BudgetMode mode =
      learner.capability() == LearnerCapability::kSamplingOnly
          ? BudgetMode::kSamplingOnly
          : BudgetMode::kEvaluationQueries;
  const DerivedParams dp = derive_params(
      rp, query_space_size,
      [&learner](std::int64_t n, double gamma, double beta) {
        return learner.budget(n, gamma, beta);
      },
      mode, profile);
  check_db_size(db, dp);

  OracleConfig config;
  config.tolerance = rp.alpha / 7.0;
  config.budget = dp.b_total;
  config.epsilon = rp.epsilon;
  ThresholdOracle oracle(db, pred, config, rng.stream("oracle-noise"));
  // From here on the loop speaks only to the oracle.
  return run_priv_learn(oracle, g, rp, dp, learner, rng);
}

}  // namespace privrel
