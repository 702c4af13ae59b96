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

#ifndef PRIVREL_SYNOPSIS_HPP
#define PRIVREL_SYNOPSIS_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "privrel/learner.hpp"

namespace privrel {

// Count-of-ones aggregation: c/(k+1) where c is the number of thresholds
// the hypotheses claim are cleared. Order-insensitive, and off by at most
// 2/(k+1) when at most one hypothesis errs.
double aggregate_hypotheses(
    std::span<const std::unique_ptr<Hypothesis>> hypotheses, const BitVec& q);

// The released object: either a constant function or k boolean hypotheses
// (one per threshold) aggregated into a [0,1] answer.
class Synopsis {
 public:
  static Synopsis constant(double value);
  static Synopsis aggregated(
      std::vector<std::unique_ptr<Hypothesis>> hypotheses);

  bool is_constant() const { return hypotheses_.empty(); }
  double constant_value() const { return constant_value_; }
  std::size_t hypothesis_count() const { return hypotheses_.size(); }
  double spacing() const {
    return 1.0 / static_cast<double>(hypotheses_.size() + 1);
  }
  const std::vector<std::unique_ptr<Hypothesis>>& hypotheses() const {
    return hypotheses_;
  }

  double evaluate(const BitVec& q) const;

  nlohmann::json to_json() const;
  static Synopsis from_json(const nlohmann::json& j);
  void save_file(const std::string& path) const;
  static Synopsis load_file(const std::string& path);

 private:
  Synopsis() = default;

  double constant_value_ = 0;
  std::vector<std::unique_ptr<Hypothesis>> hypotheses_;
};

}  // namespace privrel

#endif  // PRIVREL_SYNOPSIS_HPP
