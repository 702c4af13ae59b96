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

#ifndef PRIVREL_FOURIER_HPP
#define PRIVREL_FOURIER_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "privrel/learner.hpp"

namespace privrel {

// The character chi_a(q) = (-1)^<a,q> in the +/-1 convention.
int parity_eval(const BitVec& a, const BitVec& q);

// In-place unnormalized transform: out[a] = sum_x (-1)^<a,x> in[x].
// Table length must be a power of two. Used by tests and verifiers as the
// independent route to the weak learner's correlations.
void walsh_hadamard_transform(std::vector<double>& table);

// Majority vote of signed parities; prediction is 1 when the signed vote
// sum is >= 0.
class ParityMajorityHypothesis : public Hypothesis {
 public:
  struct Stage {
    BitVec parity;
    int sign = 1;  // +1 or -1
  };

  ParityMajorityHypothesis(std::size_t dimension, std::vector<Stage> stages);

  bool predict(const BitVec& q) const override;
  int vote(const BitVec& q) const;
  nlohmann::json to_json() const override;
  static std::unique_ptr<ParityMajorityHypothesis> from_json(
      const nlohmann::json& j);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Stage>& stages() const { return stages_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<Stage> stages_;
};

struct WeightedPoint {
  BitVec query;
  int label = 1;  // +1 or -1
  double weight = 0;
};

struct WeakParityResult {
  BitVec parity;
  double correlation = 0;  // signed, in [-1, 1]
};

// Exhaustive search over all parities of Hamming weight <= max_weight for
// the one maximizing |sum_j w_j y_j chi_a(q_j)| / sum_j w_j. Ties go to
// the lexicographically smallest index.
WeakParityResult weak_parity_learner(std::span<const WeightedPoint> points,
                                     std::size_t max_weight);

struct SmoothBoostConfig {
  double target_error = 0;     // stop once weighted sample error <= this/2... see below
  double confidence = 0;       // beta'; recorded, drives nothing at desk scale
  double mu_max = 1;           // smoothness ceiling relative to the base weights
  std::size_t max_weight = 0;  // parity weight bound for the weak learner
  double advantage_floor = 0.01;
  std::size_t round_cap = 0;   // 0: use ceil(4/(target_error*floor^2))
};

struct SmoothBoostOutcome {
  std::unique_ptr<ParityMajorityHypothesis> hypothesis;
  std::size_t rounds = 0;
  double final_error = 0;        // base-weighted training error
  double min_advantage = 1;      // smallest |correlation| accepted
  double max_density_ratio = 0;  // largest intermediate density vs base
  bool hit_round_cap = false;
};

// Smoothness-capped boosting over the given sample: bounded-density
// reweighting (never exceeding mu_max relative to the empirical base),
// one exhaustive low-weight parity search per round, majority-vote
// aggregation. Stops once the base-weighted error of the majority is at
// most target_error/2 or the round cap is reached; a round whose best
// correlation falls below the advantage floor is a learner failure.
//
// When a restricted evaluation callback is supplied, every distinct
// sample point is looked up once: points reported as zero-mass are
// dropped (and never queried again), and returned labels must agree with
// the sample labels.
SmoothBoostOutcome smooth_boost(std::span<const LabeledExample> examples,
                                const RestrictedEvalFn* restricted_eval,
                                const SmoothBoostConfig& config);

// The learner the reduction plugs in for parity and generic predicates
// under (near-)uniform query distributions. Declares restricted-evaluation
// access; budget is 2*ceil(c_budget*round_cap*ln(1/beta)/gamma) covering
// samples plus an equal evaluation-query allowance.
class FourierLearner : public ThresholdLearner {
 public:
  FourierLearner(std::size_t d, double mu_max, double c_budget,
                 std::size_t max_weight = 0 /* 0: d */,
                 double advantage_floor = 0.01, std::size_t round_cap = 0);

  const char* name() const override { return "fourier"; }
  LearnerCapability capability() const override {
    return LearnerCapability::kNeedsRestrictedEvaluation;
  }
  std::int64_t budget(std::int64_t n, double gamma, double beta) const override;
  TrainOutcome train(const TrainRequest& request) const override;

  std::size_t round_cap_for(double gamma) const;

 private:
  std::size_t d_;
  double mu_max_;
  double c_budget_;
  std::size_t max_weight_;
  double advantage_floor_;
  std::size_t round_cap_;
};

}  // namespace privrel

#endif  // PRIVREL_FOURIER_HPP
