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

#ifndef PRIVREL_LEARNER_HPP
#define PRIVREL_LEARNER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "json.hpp"
#include "privrel/bitvec.hpp"
#include "privrel/rng.hpp"

namespace privrel {

enum class LearnerCapability { kSamplingOnly, kNeedsRestrictedEvaluation };

struct LabeledExample {
  BitVec query;
  bool label;
};

// Answer of the restricted evaluation oracle: a multiplicative mass
// estimate and the label, or (0, nothing) when the point carries no mass.
// A learner must never query a point it was already told has zero mass.
struct EvalAnswer {
  double mass = 0;
  std::optional<bool> label;
};

using RestrictedEvalFn = std::function<EvalAnswer(const BitVec&)>;

class Hypothesis {
 public:
  virtual ~Hypothesis() = default;
  virtual bool predict(const BitVec& q) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

struct TrainRequest {
  std::int64_t n_prime = 0;  // size parameter of the threshold being learned
  double threshold = 0;
  double gamma = 0;
  double beta = 0;
  std::span<const LabeledExample> examples;
  // Null when the caller provides sampling access only.
  const RestrictedEvalFn* restricted_eval = nullptr;
  Rng rng{0};
};

struct TrainOutcome {
  std::unique_ptr<Hypothesis> hypothesis;
  nlohmann::json details;  // learner-specific run record for the transcript
};

// A learner for thresholded sums of predicates: declares its example
// budget and access needs, and turns labeled examples (plus optionally a
// restricted evaluation oracle) into a boolean hypothesis.
class ThresholdLearner {
 public:
  virtual ~ThresholdLearner() = default;
  virtual const char* name() const = 0;
  virtual LearnerCapability capability() const = 0;
  virtual std::int64_t budget(std::int64_t n, double gamma,
                              double beta) const = 0;
  virtual TrainOutcome train(const TrainRequest& request) const = 0;
};

}  // namespace privrel

#endif  // PRIVREL_LEARNER_HPP
