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

#include "privrel/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "privrel/error.hpp"
#include "privrel/params.hpp"

namespace privrel {

int parity_eval(const BitVec& a, const BitVec& q) {
  if (a.size() != q.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "parity index has length " + std::to_string(a.size()) +
             ", query has length " + std::to_string(q.size()));
  }
  return and_parity(a, q) ? -1 : 1;
}

void walsh_hadamard_transform(std::vector<double>& table) {
  const std::size_t n = table.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    fail(ErrorCode::kInvalidArgument,
         "transform table length must be a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = table[i];
        const double b = table[i + half];
        table[i] = a + b;
        table[i + half] = a - b;
      }
    }
  }
}

ParityMajorityHypothesis::ParityMajorityHypothesis(std::size_t dimension,
                                                   std::vector<Stage> stages)
    : dimension_(dimension), stages_(std::move(stages)) {
  if (stages_.empty()) {
    fail(ErrorCode::kInvalidArgument,
         "parity majority needs at least one stage");
  }
  for (const Stage& s : stages_) {
    if (s.parity.size() != dimension_) {
      fail(ErrorCode::kDimensionMismatch, "stage parity has wrong length");
    }
    if (s.sign != 1 && s.sign != -1) {
      fail(ErrorCode::kInvalidArgument, "stage sign must be +1 or -1");
    }
  }
}

int ParityMajorityHypothesis::vote(const BitVec& q) const {
  int sum = 0;
  for (const Stage& s : stages_) {
    sum += s.sign * parity_eval(s.parity, q);
  }
  return sum;
}

bool ParityMajorityHypothesis::predict(const BitVec& q) const {
  return vote(q) >= 0;
}

nlohmann::json ParityMajorityHypothesis::to_json() const {
  nlohmann::json stages = nlohmann::json::array();
  for (const Stage& s : stages_) {
    stages.push_back({s.parity.to_string(), s.sign});
  }
  return {{"type", "parity_majority"},
          {"dimension", dimension_},
          {"stages", std::move(stages)}};
}

std::unique_ptr<ParityMajorityHypothesis> ParityMajorityHypothesis::from_json(
    const nlohmann::json& j) {
  std::vector<Stage> stages;
  for (const auto& entry : j.at("stages")) {
    stages.push_back(Stage{BitVec::from_string(entry.at(0).get<std::string>()),
                           entry.at(1).get<int>()});
  }
  return std::make_unique<ParityMajorityHypothesis>(
      j.at("dimension").get<std::size_t>(), std::move(stages));
}

WeakParityResult weak_parity_learner(std::span<const WeightedPoint> points,
                                     std::size_t max_weight) {
  if (points.empty()) {
    fail(ErrorCode::kInvalidArgument, "weak learner needs sample points");
  }
  const std::size_t d = points[0].query.size();
  if (d > 62) {
    fail(ErrorCode::kInvalidArgument, "weak parity learner requires d <= 62");
  }
  if (max_weight > d) max_weight = d;
  double total_weight = 0;
  for (const WeightedPoint& p : points) {
    if (p.weight < 0 || !std::isfinite(p.weight)) {
      fail(ErrorCode::kInvalidArgument, "weights must be non-negative");
    }
    if (p.query.size() != d) {
      fail(ErrorCode::kDimensionMismatch, "sample points disagree on length");
    }
    total_weight += p.weight;
  }
  if (total_weight <= 0) {
    fail(ErrorCode::kInvalidArgument, "weak learner needs nonzero total weight");
  }

  WeakParityResult best;
  best.parity = BitVec(d);
  bool have_best = false;
  auto consider = [&](std::uint64_t mask) {
    BitVec a(d);
    for (std::size_t i = 0; i < d; ++i) {
      if ((mask >> i) & 1) a.set(i, true);
    }
    double acc = 0;
    for (const WeightedPoint& p : points) {
      acc += p.weight * static_cast<double>(p.label) * parity_eval(a, p.query);
    }
    const double corr = acc / total_weight;
    if (!have_best || std::abs(corr) > std::abs(best.correlation) ||
        (std::abs(corr) == std::abs(best.correlation) &&
         BitVec::lex_less(a, best.parity))) {
      best.parity = std::move(a);
      best.correlation = corr;
      have_best = true;
    }
  };

  consider(0);
  for (std::size_t w = 1; w <= max_weight; ++w) {
    std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    const std::uint64_t limit = std::uint64_t{1} << d;
    while (mask < limit) {
      consider(mask);
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return best;
}

namespace {

struct BoostPoint {
  BitVec query;
  int label = 1;
  double base = 0;  // base mass (multiplicity / total)
  int votes = 0;    // running signed parity vote
};

// Bounded-density reweighting: D_j = min(c_j / Z, mu_max) * base_j with Z
// chosen by bisection so the weights sum to 1. The density ratio relative
// to the base is min(c_j/Z, mu_max) <= mu_max by construction.
double apply_bounded_density(std::vector<BoostPoint>& points,
                             const std::vector<double>& raw,
                             double mu_max,
                             std::vector<double>& out_weights) {
  double upper = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    upper = std::max(upper, raw[j]);
  }
  if (upper <= 0) upper = 1;
  double lo = upper / (mu_max * 4.0), hi = upper * 2.0;
  auto total_at = [&](double z) {
    double acc = 0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      acc += points[j].base * std::min(raw[j] / z, mu_max);
    }
    return acc;
  };
  // Widen until the root is bracketed (total is decreasing in z).
  while (total_at(lo) < 1.0 && lo > 1e-300) lo /= 2;
  while (total_at(hi) > 1.0 && hi < 1e300) hi *= 2;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (total_at(mid) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double z = 0.5 * (lo + hi);
  double max_ratio = 0;
  out_weights.resize(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double ratio = std::min(raw[j] / z, mu_max);
    out_weights[j] = points[j].base * ratio;
    max_ratio = std::max(max_ratio, ratio);
  }
  return max_ratio;
}

}  // namespace

SmoothBoostOutcome smooth_boost(std::span<const LabeledExample> examples,
                                const RestrictedEvalFn* restricted_eval,
                                const SmoothBoostConfig& config) {
  if (examples.empty()) {
    fail(ErrorCode::kInvalidArgument, "smooth_boost needs labeled examples");
  }
  if (!(config.mu_max >= 1)) {
    fail(ErrorCode::kInvalidArgument, "smoothness ceiling must be >= 1");
  }
  const std::size_t d = examples[0].query.size();

  // Coalesce duplicates; the oracle's cache makes duplicate labels agree.
  std::unordered_map<BitVec, std::pair<int, double>, BitVecHash> seen;
  std::vector<BitVec> order;
  for (const LabeledExample& ex : examples) {
    const int label = ex.label ? 1 : -1;
    auto [it, inserted] = seen.emplace(ex.query, std::make_pair(label, 0.0));
    if (inserted) {
      order.push_back(ex.query);
    } else if (it->second.first != label) {
      fail(ErrorCode::kInvalidArgument,
           "conflicting labels for the same query in the training sample");
    }
    it->second.second += 1.0;
  }

  std::vector<BoostPoint> points;
  points.reserve(order.size());
  double total = 0;
  for (const BitVec& q : order) {
    const auto& [label, mult] = seen.at(q);
    // One restricted-evaluation lookup per distinct point; a zero-mass
    // answer drops the point and it is never queried again.
    if (restricted_eval != nullptr) {
      const EvalAnswer answer = (*restricted_eval)(q);
      if (!answer.label.has_value() || answer.mass <= 0) continue;
      if (*answer.label != (label > 0)) {
        fail(ErrorCode::kInvalidArgument,
             "evaluation oracle disagrees with the sample label");
      }
    }
    points.push_back(BoostPoint{q, label, mult, 0});
    total += mult;
  }
  if (points.empty()) {
    fail(ErrorCode::kLearnerFailure,
         "all training points were reported as zero-mass");
  }
  for (BoostPoint& p : points) p.base /= total;

  const std::size_t cap =
      config.round_cap > 0
          ? config.round_cap
          : static_cast<std::size_t>(checked_ceil(
                4.0 / (config.target_error * config.advantage_floor *
                       config.advantage_floor),
                "round_cap"));

  SmoothBoostOutcome outcome;
  std::vector<ParityMajorityHypothesis::Stage> stages;
  std::vector<double> raw(points.size(), 1.0);
  std::vector<double> weights;
  std::vector<WeightedPoint> weighted(points.size());

  auto base_error = [&]() {
    double err = 0;
    for (const BoostPoint& p : points) {
      const bool predicted = p.votes >= 0;
      if (predicted != (p.label > 0)) err += p.base;
    }
    return err;
  };

  for (std::size_t round = 0; round < cap; ++round) {
    // Reweight: SmoothBoost-style damping of well-classified points,
    // truncated at 1, then density-capped against the base.
    const double damp = 1.0 - std::min(config.advantage_floor, 0.5);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const int margin = points[j].label * points[j].votes;
      raw[j] = margin <= 0
                   ? 1.0
                   : std::pow(damp, 0.5 * static_cast<double>(margin));
    }
    const double ratio =
        apply_bounded_density(points, raw, config.mu_max, weights);
    outcome.max_density_ratio = std::max(outcome.max_density_ratio, ratio);
    if (ratio > config.mu_max * (1.0 + 1e-9)) {
      fail(ErrorCode::kInternal, "bounded-density invariant violated");
    }

    for (std::size_t j = 0; j < points.size(); ++j) {
      weighted[j] = WeightedPoint{points[j].query, points[j].label, weights[j]};
    }
    const WeakParityResult weak =
        weak_parity_learner(weighted, config.max_weight);
    if (std::abs(weak.correlation) < config.advantage_floor) {
      fail(ErrorCode::kLearnerFailure,
           "no parity of the allowed weight has advantage above the floor (" +
               std::to_string(std::abs(weak.correlation)) + " < " +
               std::to_string(config.advantage_floor) + ")");
    }
    outcome.min_advantage =
        std::min(outcome.min_advantage, std::abs(weak.correlation));

    const int sign = weak.correlation >= 0 ? 1 : -1;
    stages.push_back(ParityMajorityHypothesis::Stage{weak.parity, sign});
    for (BoostPoint& p : points) {
      p.votes += sign * parity_eval(weak.parity, p.query);
    }
    outcome.rounds = round + 1;

    if (base_error() <= config.target_error / 2.0) break;
  }
  outcome.hit_round_cap = outcome.rounds == cap &&
                          base_error() > config.target_error / 2.0;
  outcome.final_error = base_error();
  outcome.hypothesis =
      std::make_unique<ParityMajorityHypothesis>(d, std::move(stages));
  return outcome;
}

FourierLearner::FourierLearner(std::size_t d, double mu_max, double c_budget,
                               std::size_t max_weight, double advantage_floor,
                               std::size_t round_cap)
    : d_(d),
      mu_max_(mu_max),
      c_budget_(c_budget),
      max_weight_(max_weight == 0 ? d : max_weight),
      advantage_floor_(advantage_floor),
      round_cap_(round_cap) {
  if (!(mu_max_ >= 1)) {
    fail(ErrorCode::kInvalidArgument, "smoothness ceiling must be >= 1");
  }
}

std::size_t FourierLearner::round_cap_for(double gamma) const {
  if (round_cap_ > 0) return round_cap_;
  return static_cast<std::size_t>(checked_ceil(
      4.0 / (gamma * advantage_floor_ * advantage_floor_), "round_cap"));
}

std::int64_t FourierLearner::budget(std::int64_t n, double gamma,
                                    double beta) const {
  (void)n;  // the parity scan is exhaustive; n does not drive the budget
  const double samples =
      std::ceil(c_budget_ * static_cast<double>(round_cap_for(gamma)) *
                std::log(1.0 / beta) / gamma - 1e-9);
  // Equal allowance for evaluation queries.
  return checked_ceil(2.0 * std::max(samples, 1.0), "b_base");
}

TrainOutcome FourierLearner::train(const TrainRequest& request) const {
  SmoothBoostConfig config;
  config.target_error = request.gamma;
  config.confidence = request.beta;
  config.mu_max = mu_max_;
  config.max_weight = max_weight_;
  config.advantage_floor = advantage_floor_;
  config.round_cap = round_cap_for(request.gamma);
  SmoothBoostOutcome boost =
      smooth_boost(request.examples, request.restricted_eval, config);
  TrainOutcome outcome;
  outcome.hypothesis = std::move(boost.hypothesis);
  outcome.details = {{"learner", "fourier"},
                     {"rounds", boost.rounds},
                     {"final_error", boost.final_error},
                     {"min_advantage", boost.min_advantage},
                     {"max_density_ratio", boost.max_density_ratio},
                     {"hit_round_cap", boost.hit_round_cap}};
  return outcome;
}

}  // namespace privrel
