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

#ifndef PRIVREL_PTF_HPP
#define PRIVREL_PTF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "privrel/database.hpp"
#include "privrel/learner.hpp"
#include "privrel/params.hpp"

namespace privrel {

// A monomial over 0/1 inputs: a sorted set of attribute indices. Inputs
// are boolean, so polynomials are multilinear (subsets, not multisets).
using Monomial = std::vector<std::uint16_t>;

// Number of monomials of degree <= degree over d attributes; errors with
// kFeatureOverflow when it exceeds the cap.
std::uint64_t feature_count(std::size_t d, std::size_t degree,
                            std::uint64_t cap);

inline constexpr std::uint64_t kDefaultFeatureCap = 200000;

// The monomial basis of degree <= degree over d attributes, in a fixed
// order (by degree, then colexicographically). Requires d <= 62.
class FeatureSpace {
 public:
  FeatureSpace(std::size_t d, std::size_t degree,
               std::uint64_t cap = kDefaultFeatureCap);

  std::size_t dimension() const { return d_; }
  std::size_t degree() const { return degree_; }
  std::size_t count() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  // Indices of the monomials whose value is 1 on q (the sparse feature
  // vector of q: entry 1 for each listed index, 0 elsewhere; the empty
  // monomial is always active).
  std::vector<std::uint32_t> active_features(const BitVec& q) const;

 private:
  std::size_t d_;
  std::size_t degree_;
  std::vector<Monomial> monomials_;
  std::vector<std::uint64_t> class_offset_;  // first index of each degree
};

// sign(A(q) - threshold) hypothesis with sign(0) = 1: predicts 1 iff the
// polynomial value reaches the threshold.
class PTFHypothesis : public Hypothesis {
 public:
  PTFHypothesis(std::size_t dimension, std::map<Monomial, double> terms,
                double threshold);

  bool predict(const BitVec& q) const override;
  double value(const BitVec& q) const;
  nlohmann::json to_json() const override;
  static std::unique_ptr<PTFHypothesis> from_json(const nlohmann::json& j);

  std::size_t dimension() const { return dimension_; }
  std::size_t degree() const { return degree_; }
  double threshold() const { return threshold_; }
  const std::map<Monomial, double>& terms() const { return terms_; }

 private:
  std::size_t dimension_ = 0;
  std::size_t degree_ = 0;
  double threshold_ = 0;
  std::map<Monomial, double> terms_;
};

// Explicit sign-representation of f^D_t over B_k for the monotone
// conjunction class: sum over items of the damping polynomial applied to
// k minus the number of violated zero-coordinates, thresholded at
// ceil(t*n) - 1/2. Reads the database directly; it is a representability
// witness and test oracle, never part of the private release path.
std::unique_ptr<PTFHypothesis> explicit_ptf(const Database& db, double t,
                                            std::size_t k);

enum class DegreeScheduleKind { kSparseBk, kFullCube };

struct DegreeSchedule {
  DegreeScheduleKind kind = DegreeScheduleKind::kSparseBk;
  std::size_t sparsity = 0;  // k for kSparseBk
  double multiplier = 1;     // c_degree_* from the active profile

  // ceil(c*sqrt(k ln n)) or ceil(c*d^(1/3)(ln n)^(2/3)), clamped to [1, d].
  std::size_t degree_for(std::int64_t n, std::size_t d) const;
};

struct LpTrainReport {
  std::size_t degree_used = 0;
  std::size_t features = 0;
  bool clean_fit = false;
  double hinge_violation = 0;
  std::int64_t lp_iterations = 0;
  std::size_t degrees_tried = 0;
};

// Distribution-free PAC learner from PTF representability: a unit-margin
// separation LP over the monomial features, escalating the degree on
// infeasibility up to d (or the feature cap) and falling back to the
// hinge-violation minimizer, which is flagged as an imperfect fit.
std::unique_ptr<PTFHypothesis> lp_learn(std::span<const LabeledExample> samples,
                                        std::size_t degree, std::size_t d,
                                        std::uint64_t feature_cap,
                                        LpTrainReport* report);

// The learner the reduction plugs in for conjunction queries. Budget is
// (feature count at the scheduled degree) * ceil(c_budget*ln(1/beta)/gamma);
// sampling access only.
class PtfLpLearner : public ThresholdLearner {
 public:
  PtfLpLearner(std::size_t d, DegreeSchedule schedule, double c_budget,
               std::uint64_t feature_cap = kDefaultFeatureCap);

  const char* name() const override { return "ptf_lp"; }
  LearnerCapability capability() const override {
    return LearnerCapability::kSamplingOnly;
  }
  std::int64_t budget(std::int64_t n, double gamma, double beta) const override;
  TrainOutcome train(const TrainRequest& request) const override;

 private:
  std::size_t d_;
  DegreeSchedule schedule_;
  double c_budget_;
  std::uint64_t feature_cap_;
};

}  // namespace privrel

#endif  // PRIVREL_PTF_HPP
