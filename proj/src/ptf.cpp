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

#include "privrel/ptf.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "privrel/error.hpp"
#include "privrel/poly.hpp"
#include "privrel/queryset.hpp"
#include "privrel/simplex.hpp"

namespace privrel {

std::uint64_t feature_count(std::size_t d, std::size_t degree,
                            std::uint64_t cap) {
  const std::uint64_t count = bk_size(d, degree);
  if (count > cap) {
    fail(ErrorCode::kFeatureOverflow,
         "feature count " + std::to_string(count) + " exceeds the cap of " +
             std::to_string(cap));
  }
  return count;
}

FeatureSpace::FeatureSpace(std::size_t d, std::size_t degree,
                           std::uint64_t cap)
    : d_(d), degree_(std::min(degree, d)) {
  if (d < 1 || d > 62) {
    fail(ErrorCode::kInvalidArgument, "feature space requires 1 <= d <= 62");
  }
  const std::uint64_t total = feature_count(d_, degree_, cap);
  monomials_.reserve(static_cast<std::size_t>(total));
  class_offset_.assign(degree_ + 2, 0);
  monomials_.push_back({});  // the constant monomial
  class_offset_[1] = 1;
  for (std::size_t w = 1; w <= degree_; ++w) {
    // Gosper's hack walks same-weight masks in increasing integer order,
    // which is colexicographic order on subsets.
    std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    const std::uint64_t limit = std::uint64_t{1} << d_;
    while (mask < limit) {
      Monomial m;
      m.reserve(w);
      std::uint64_t rest = mask;
      while (rest) {
        m.push_back(static_cast<std::uint16_t>(std::countr_zero(rest)));
        rest &= rest - 1;
      }
      monomials_.push_back(std::move(m));
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
    class_offset_[w + 1] = monomials_.size();
  }
}

std::vector<std::uint32_t> FeatureSpace::active_features(
    const BitVec& q) const {
  if (q.size() != d_) {
    fail(ErrorCode::kDimensionMismatch,
         "query has length " + std::to_string(q.size()) + ", expected " +
             std::to_string(d_));
  }
  std::uint64_t mask = q.words().empty() ? 0 : q.words()[0];
  std::vector<std::uint32_t> out;
  out.push_back(0);  // constant monomial
  // Walk all submasks of q's support and keep those within the degree,
  // ranking each by its colexicographic position inside its weight class.
  std::uint64_t sub = mask;
  while (sub) {
    const int w = std::popcount(sub);
    if (static_cast<std::size_t>(w) <= degree_) {
      std::uint64_t rank = 0;
      std::uint64_t rest = sub;
      for (int t = 1; rest; ++t) {
        const int pos = std::countr_zero(rest);
        rank += binomial(static_cast<std::uint64_t>(pos),
                         static_cast<std::uint64_t>(t));
        rest &= rest - 1;
      }
      out.push_back(static_cast<std::uint32_t>(
          class_offset_[static_cast<std::size_t>(w)] + rank));
    }
    sub = (sub - 1) & mask;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PTFHypothesis::PTFHypothesis(std::size_t dimension,
                             std::map<Monomial, double> terms,
                             double threshold)
    : dimension_(dimension), threshold_(threshold), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0.0 && !it->first.empty()) {
      it = terms_.erase(it);
      continue;
    }
    if (!it->first.empty() && it->first.back() >= dimension_) {
      fail(ErrorCode::kDimensionMismatch, "monomial index out of range");
    }
    degree_ = std::max(degree_, it->first.size());
    ++it;
  }
}

bool PTFHypothesis::predict(const BitVec& q) const {
  return value(q) >= threshold_;
}

double PTFHypothesis::value(const BitVec& q) const {
  if (q.size() != dimension_) {
    fail(ErrorCode::kDimensionMismatch,
         "query has length " + std::to_string(q.size()) + ", expected " +
             std::to_string(dimension_));
  }
  double acc = 0;
  for (const auto& [monomial, coeff] : terms_) {
    bool active = true;
    for (std::uint16_t i : monomial) {
      if (!q.get(i)) {
        active = false;
        break;
      }
    }
    if (active) acc += coeff;
  }
  return acc;
}

nlohmann::json PTFHypothesis::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [monomial, coeff] : terms_) {
    terms.push_back({monomial, coeff});
  }
  return {{"type", "ptf"},
          {"dimension", dimension_},
          {"degree", degree_},
          {"threshold", threshold_},
          {"terms", std::move(terms)}};
}

std::unique_ptr<PTFHypothesis> PTFHypothesis::from_json(
    const nlohmann::json& j) {
  std::map<Monomial, double> terms;
  for (const auto& entry : j.at("terms")) {
    terms[entry.at(0).get<Monomial>()] = entry.at(1).get<double>();
  }
  return std::make_unique<PTFHypothesis>(j.at("dimension").get<std::size_t>(),
                                         std::move(terms),
                                         j.at("threshold").get<double>());
}

std::unique_ptr<PTFHypothesis> explicit_ptf(const Database& db, double t,
                                            std::size_t k) {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "threshold must lie in [0,1]");
  }
  const std::size_t n = db.size();
  const std::size_t d = db.dimension();
  if (d > 62) {
    fail(ErrorCode::kInvalidArgument, "explicit_ptf requires d <= 62");
  }
  const DampingPoly s = damping_poly(k, 1.0 / (3.0 * static_cast<double>(n)));
  const std::size_t s_degree = s.chebyshev_degree * s.exponent;

  std::map<Monomial, double> terms;
  std::vector<double> diff;
  for (const BitVec& u : db.items()) {
    const BitVec zeros = ~u;
    const std::size_t z = zeros.popcount();
    const std::size_t max_size = std::min({k, z, s_degree});

    // Newton forward differences of g(x) = s(k - x) at 0..max_size; the
    // truncated expansion sum_j diff_j * C(x, j) equals g(x) for every
    // integer x <= max_size, which covers all of B_k.
    diff.assign(max_size + 1, 0.0);
    for (std::size_t i = 0; i <= max_size; ++i) {
      diff[i] = s.value(static_cast<double>(k) - static_cast<double>(i));
    }
    for (std::size_t level = 1; level <= max_size; ++level) {
      for (std::size_t i = max_size; i >= level; --i) {
        diff[i] -= diff[i - 1];
        if (i == level) break;
      }
    }

    terms[{}] += diff[0];
    if (max_size == 0) continue;
    const std::uint64_t mask = zeros.words()[0];
    std::uint64_t sub = mask;
    while (sub) {
      const int w = std::popcount(sub);
      if (static_cast<std::size_t>(w) <= max_size) {
        Monomial m;
        m.reserve(static_cast<std::size_t>(w));
        std::uint64_t rest = sub;
        while (rest) {
          m.push_back(static_cast<std::uint16_t>(std::countr_zero(rest)));
          rest &= rest - 1;
        }
        terms[std::move(m)] += diff[static_cast<std::size_t>(w)];
      }
      sub = (sub - 1) & mask;
    }
  }

  const double threshold =
      std::ceil(t * static_cast<double>(n) - 1e-9) - 0.5;
  return std::make_unique<PTFHypothesis>(d, std::move(terms), threshold);
}

std::size_t DegreeSchedule::degree_for(std::int64_t n, std::size_t d) const {
  if (n < 2) {
    fail(ErrorCode::kInvalidArgument, "degree schedule requires n >= 2");
  }
  const double ln_n = std::log(static_cast<double>(n));
  double raw = 0;
  switch (kind) {
    case DegreeScheduleKind::kSparseBk:
      raw = multiplier * std::sqrt(static_cast<double>(sparsity) * ln_n);
      break;
    case DegreeScheduleKind::kFullCube:
      raw = multiplier * std::cbrt(static_cast<double>(d)) *
            std::pow(ln_n, 2.0 / 3.0);
      break;
  }
  const std::int64_t degree = checked_ceil(raw, "degree");
  if (degree < 1) return 1;
  return std::min(static_cast<std::size_t>(degree), d);
}

namespace {

struct DistinctSample {
  BitVec query;
  bool label;
  double multiplicity;
};

// Coalesce duplicate (query, label) pairs; remembers whether some query
// appears with both labels (then no degree can separate).
std::vector<DistinctSample> coalesce(std::span<const LabeledExample> samples,
                                     bool* contradictory) {
  struct Counts {
    double pos = 0;
    double neg = 0;
  };
  std::unordered_map<BitVec, Counts, BitVecHash> seen;
  std::vector<BitVec> order;
  for (const LabeledExample& ex : samples) {
    auto [it, inserted] = seen.emplace(ex.query, Counts{});
    if (inserted) order.push_back(ex.query);
    (ex.label ? it->second.pos : it->second.neg) += 1;
  }
  *contradictory = false;
  std::vector<DistinctSample> out;
  out.reserve(order.size());
  for (const BitVec& q : order) {
    const Counts& c = seen.at(q);
    if (c.pos > 0 && c.neg > 0) *contradictory = true;
    if (c.pos > 0) out.push_back({q, true, c.pos});
    if (c.neg > 0) out.push_back({q, false, c.neg});
  }
  return out;
}

struct LpFit {
  std::vector<double> weights;  // one per feature
  double violation = 0;
  std::int64_t iterations = 0;
  bool clean = false;
};

// Margin LP at a fixed degree. Solves the hinge-minimization dual
// (maximize sum(lambda), sum lambda_j y_j phi_j = 0, 0 <= lambda_j <= mult_j);
// the optimal duals are the separator, and objective 0 means the unit-margin
// feasibility program is satisfiable.
LpFit fit_degree(const std::vector<DistinctSample>& samples,
                 const FeatureSpace& features) {
  std::vector<SparseColumn> columns(samples.size());
  std::vector<double> costs(samples.size(), 1.0);
  std::vector<double> upper(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double sign = samples[j].label ? 1.0 : -1.0;
    for (std::uint32_t idx : features.active_features(samples[j].query)) {
      columns[j].entries.emplace_back(static_cast<std::int32_t>(idx), sign);
    }
    upper[j] = samples[j].multiplicity;
  }
  const BoxLpResult lp =
      solve_zero_rhs_box_lp(features.count(), columns, costs, upper);
  if (lp.status != BoxLpResult::Status::kOptimal) {
    fail(ErrorCode::kTraining,
         lp.status == BoxLpResult::Status::kIterationLimit
             ? "separation LP hit its iteration limit"
             : "separation LP failed numerically");
  }

  LpFit fit;
  fit.weights = lp.duals;
  fit.violation = lp.objective;
  fit.iterations = lp.iterations;

  // The LP certificate is advisory; clean fit means the recovered weights
  // actually classify every training point correctly (sign(0) = 1).
  fit.clean = true;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    double value = 0;
    for (std::uint32_t idx : features.active_features(samples[j].query)) {
      value += fit.weights[idx];
    }
    const bool predicted = value >= 0;
    if (predicted != samples[j].label) {
      fit.clean = false;
      break;
    }
  }
  return fit;
}

std::unique_ptr<PTFHypothesis> hypothesis_from_weights(
    std::size_t d, const FeatureSpace& features,
    const std::vector<double>& weights) {
  std::map<Monomial, double> terms;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) {
      terms[features.monomials()[i]] = weights[i];
    }
  }
  return std::make_unique<PTFHypothesis>(d, std::move(terms), 0.0);
}

}  // namespace

std::unique_ptr<PTFHypothesis> lp_learn(std::span<const LabeledExample> samples,
                                        std::size_t degree, std::size_t d,
                                        std::uint64_t feature_cap,
                                        LpTrainReport* report) {
  if (samples.empty()) {
    fail(ErrorCode::kInvalidArgument, "lp_learn requires at least one sample");
  }
  if (degree < 1) degree = 1;
  bool contradictory = false;
  const std::vector<DistinctSample> distinct = coalesce(samples, &contradictory);

  LpTrainReport local;
  LpTrainReport* rep = report ? report : &local;
  *rep = LpTrainReport{};

  std::size_t attempt = std::min(degree, d);
  while (true) {
    FeatureSpace features(d, attempt, feature_cap);
    const LpFit fit = fit_degree(distinct, features);
    ++rep->degrees_tried;
    rep->degree_used = attempt;
    rep->features = features.count();
    rep->clean_fit = fit.clean;
    rep->hinge_violation = fit.violation;
    rep->lp_iterations += fit.iterations;
    if (fit.clean) {
      return hypothesis_from_weights(d, features, fit.weights);
    }
    // A query carrying both labels can never be separated, so escalation
    // is pointless; otherwise try the next degree while it fits the cap.
    bool can_escalate = !contradictory && attempt < d;
    if (can_escalate) {
      try {
        feature_count(d, attempt + 1, feature_cap);
      } catch (const Error&) {
        can_escalate = false;
      }
    }
    if (!can_escalate) {
      return hypothesis_from_weights(d, features, fit.weights);
    }
    ++attempt;
  }
}

PtfLpLearner::PtfLpLearner(std::size_t d, DegreeSchedule schedule,
                           double c_budget, std::uint64_t feature_cap)
    : d_(d), schedule_(schedule), c_budget_(c_budget),
      feature_cap_(feature_cap) {}

std::int64_t PtfLpLearner::budget(std::int64_t n, double gamma,
                                  double beta) const {
  const std::size_t degree = schedule_.degree_for(n, d_);
  const double features =
      static_cast<double>(feature_count(d_, degree, feature_cap_));
  const double repeats =
      std::ceil(c_budget_ * std::log(1.0 / beta) / gamma - 1e-9);
  return checked_ceil(features * std::max(repeats, 1.0), "b_base");
}

TrainOutcome PtfLpLearner::train(const TrainRequest& request) const {
  const std::size_t degree = schedule_.degree_for(request.n_prime, d_);
  LpTrainReport report;
  auto hypothesis =
      lp_learn(request.examples, degree, d_, feature_cap_, &report);
  TrainOutcome outcome;
  outcome.hypothesis = std::move(hypothesis);
  outcome.details = {{"learner", "ptf_lp"},
                     {"scheduled_degree", degree},
                     {"degree_used", report.degree_used},
                     {"features", report.features},
                     {"clean_fit", report.clean_fit},
                     {"hinge_violation", report.hinge_violation},
                     {"lp_iterations", report.lp_iterations},
                     {"degrees_tried", report.degrees_tried}};
  return outcome;
}

}  // namespace privrel
