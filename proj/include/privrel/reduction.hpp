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

#ifndef PRIVREL_REDUCTION_HPP
#define PRIVREL_REDUCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "privrel/distribution.hpp"
#include "privrel/learner.hpp"
#include "privrel/oracle.hpp"
#include "privrel/params.hpp"
#include "privrel/synopsis.hpp"

namespace privrel {

struct IterationRecord {
  double threshold = 0;
  std::int64_t accepted = 0;  // |B_i|
  double accepted_fraction = 0;
  std::string outcome;  // "trained" or "constant"
  nlohmann::json learner_details;
};

struct RunTranscript {
  std::uint64_t seed = 0;
  DerivedParams params;
  std::vector<IterationRecord> iterations;
  PrivacyReport privacy;
  bool early_terminated = false;
  double constant_value = 0;
  double wall_clock_ms = 0;

  nlohmann::json to_json() const;
};

struct PrivLearnResult {
  Synopsis synopsis;
  RunTranscript transcript;
};

// The learning loop run purely against the threshold oracle: sample b_iter
// queries once, sweep the thresholds t_i = i/(k+1) reusing those samples,
// stop with a constant synopsis when fewer than a gamma/2 fraction survive
// the oracle's rejection, otherwise train the learner on the surviving
// labeled examples (answering its evaluation queries through the oracle)
// and aggregate the per-threshold hypotheses. Takes no database reference;
// the oracle is the only channel to the sensitive data.
PrivLearnResult run_priv_learn(ThresholdOracle& oracle,
                               const QueryDistribution& g,
                               const ReleaseParams& rp,
                               const DerivedParams& dp,
                               const ThresholdLearner& learner, Rng rng);

// Full pipeline: derive parameters, check the database size, instantiate
// the oracle at tolerance alpha/7 and budget b_total, then run the loop.
PrivLearnResult priv_learn(const Database& db, const PredicateSpec& pred,
                           const QueryDistribution& g, const ReleaseParams& rp,
                           std::uint64_t query_space_size,
                           const ThresholdLearner& learner,
                           const ParameterProfile& profile, Rng rng);

}  // namespace privrel

#endif  // PRIVREL_REDUCTION_HPP
