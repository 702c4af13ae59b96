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

#include <cmath>

#include "doctest.h"
#include "privrel/error.hpp"
#include "privrel/fourier.hpp"
#include "privrel/queryset.hpp"
#include "privrel/rng.hpp"

using namespace privrel;

namespace {

std::vector<WeightedPoint> full_cube_sample(std::size_t d,
                                            const std::vector<int>& labels) {
  std::vector<WeightedPoint> points;
  const auto cube = enumerate_full_cube(d);
  for (std::size_t i = 0; i < cube.size(); ++i) {
    points.push_back({cube[i], labels[i], 1.0});
  }
  return points;
}

}  // namespace

TEST_SUITE("parity_eval") {
  TEST_CASE("zero index is the constant character") {
    const BitVec zero(5);
    for (const BitVec& q : enumerate_full_cube(5)) {
      CHECK(parity_eval(zero, q) == 1);
    }
  }

  TEST_CASE("spec instance a=(1,0), q=(1,1)") {
    CHECK(parity_eval(BitVec::from_bits({1, 0}), BitVec::from_bits({1, 1})) ==
          -1);
  }

  TEST_CASE("nonzero characters are balanced over the cube") {
    for (const BitVec& a : enumerate_full_cube(6)) {
      long long sum = 0;
      for (const BitVec& q : enumerate_full_cube(6)) {
        sum += parity_eval(a, q);
      }
      if (a.popcount() == 0) {
        CHECK(sum == 64);
      } else {
        CHECK(sum == 0);
      }
    }
  }
}

TEST_SUITE("walsh_hadamard") {
  TEST_CASE("matches direct character sums on random tables") {
    Rng rng(4);
    for (std::size_t d : {3u, 6u, 10u}) {
      const std::size_t size = std::size_t{1} << d;
      std::vector<double> table(size);
      for (double& v : table) v = rng.next_unit() * 2.0 - 1.0;
      std::vector<double> transformed = table;
      walsh_hadamard_transform(transformed);
      const auto cube = enumerate_full_cube(d);
      // Spot-check a handful of characters directly.
      for (std::size_t trial = 0; trial < 8; ++trial) {
        const std::size_t a_idx = rng.next_below(size);
        double direct = 0;
        for (std::size_t x = 0; x < size; ++x) {
          direct += table[x] * parity_eval(cube[a_idx], cube[x]);
        }
        CHECK(std::abs(transformed[a_idx] - direct) < 1e-9);
      }
    }
  }

  TEST_CASE("rejects non-power-of-two tables") {
    std::vector<double> bad(6, 0.0);
    CHECK_THROWS_AS(walsh_hadamard_transform(bad), Error);
  }
}

TEST_SUITE("weak_parity_learner") {
  TEST_CASE("recovers an exact parity labeling") {
    const std::size_t d = 6;
    const BitVec target = BitVec::from_string("010110");
    std::vector<int> labels;
    for (const BitVec& q : enumerate_full_cube(d)) {
      labels.push_back(parity_eval(target, q));
    }
    const auto result =
        weak_parity_learner(full_cube_sample(d, labels), target.popcount());
    CHECK(result.parity == target);
    CHECK(result.correlation == doctest::Approx(1.0));
  }

  TEST_CASE("constant labels pick the empty character") {
    const std::size_t d = 5;
    std::vector<int> labels(std::size_t{1} << d, 1);
    const auto result = weak_parity_learner(full_cube_sample(d, labels), d);
    CHECK(result.parity == BitVec(d));
    CHECK(result.correlation == doctest::Approx(1.0));
  }

  TEST_CASE("weight bound hides heavy parities") {
    const std::size_t d = 5;
    const BitVec target = BitVec::from_string("11111");
    std::vector<int> labels;
    for (const BitVec& q : enumerate_full_cube(d)) {
      labels.push_back(parity_eval(target, q));
    }
    const auto result = weak_parity_learner(full_cube_sample(d, labels), 2);
    // The true parity has weight 5; nothing of weight <= 2 correlates.
    CHECK(std::abs(result.correlation) < 1e-12);
  }

  TEST_CASE("correlations match the full scan maximum") {
    Rng rng(17);
    const std::size_t d = 8;
    const auto cube = enumerate_full_cube(d);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<WeightedPoint> points;
      for (const BitVec& q : cube) {
        if (!rng.next_bernoulli(0.6)) continue;
        points.push_back(
            {q, rng.next_bernoulli(0.5) ? 1 : -1, rng.next_unit() + 0.01});
      }
      if (points.empty()) continue;
      double total = 0;
      for (const auto& p : points) total += p.weight;
      // Independent full scan.
      double best = -1;
      for (const BitVec& a : cube) {
        double acc = 0;
        for (const auto& p : points) {
          acc += p.weight * p.label * parity_eval(a, p.query);
        }
        best = std::max(best, std::abs(acc / total));
      }
      const auto result = weak_parity_learner(points, d);
      CHECK(std::abs(result.correlation) == doctest::Approx(best).epsilon(1e-12));
    }
  }

  TEST_CASE("single-item threshold database exposes its parity") {
    // All items equal u*: f_{0.5}(q) = P(q, u*), which in the +/-1 world is
    // exactly -chi on the support of u*.
    const std::size_t d = 8;
    const BitVec star = BitVec::from_string("10110100");
    std::vector<int> labels;
    for (const BitVec& q : enumerate_full_cube(d)) {
      labels.push_back(and_parity(q, star) == 1 ? 1 : -1);
    }
    const auto result = weak_parity_learner(full_cube_sample(d, labels), d);
    CHECK(result.parity == star);
    CHECK(std::abs(result.correlation) == doctest::Approx(1.0));
  }

  TEST_CASE("degenerate all-zero weights error") {
    std::vector<WeightedPoint> points = {{BitVec::from_string("01"), 1, 0.0}};
    CHECK_THROWS_AS(weak_parity_learner(points, 2), Error);
  }
}

TEST_SUITE("smooth_boost") {
  TEST_CASE("a single parity converges in one round") {
    const std::size_t d = 6;
    const BitVec target = BitVec::from_string("110010");
    std::vector<LabeledExample> examples;
    for (const BitVec& q : enumerate_full_cube(d)) {
      examples.push_back({q, parity_eval(target, q) == 1});
    }
    SmoothBoostConfig config;
    config.target_error = 0.05;
    config.mu_max = 8;
    config.max_weight = d;
    const auto outcome = smooth_boost(examples, nullptr, config);
    CHECK(outcome.rounds == 1);
    CHECK(outcome.final_error == 0.0);
    for (const LabeledExample& ex : examples) {
      CHECK(outcome.hypothesis->predict(ex.query) == ex.label);
    }
  }

  TEST_CASE("majority of three parities is learned exactly at d=8") {
    const std::size_t d = 8;
    const BitVec a1 = BitVec::from_string("10000001");
    const BitVec a2 = BitVec::from_string("01100000");
    const BitVec a3 = BitVec::from_string("00011100");
    std::vector<LabeledExample> examples;
    for (const BitVec& q : enumerate_full_cube(d)) {
      const int vote =
          parity_eval(a1, q) + parity_eval(a2, q) + parity_eval(a3, q);
      examples.push_back({q, vote >= 0});
    }
    SmoothBoostConfig config;
    config.target_error = 0.002;  // push to exactness
    config.mu_max = 64;
    config.max_weight = 3;
    config.round_cap = 64;
    const auto outcome = smooth_boost(examples, nullptr, config);
    std::size_t wrong = 0;
    for (const LabeledExample& ex : examples) {
      if (outcome.hypothesis->predict(ex.query) != ex.label) ++wrong;
    }
    CHECK(wrong == 0);
    CHECK(outcome.max_density_ratio <= 64.0 + 1e-9);
  }

  TEST_CASE("density never exceeds the ceiling on noisy labels") {
    const std::size_t d = 5;
    Rng rng(3);
    std::vector<LabeledExample> examples;
    for (const BitVec& q : enumerate_full_cube(d)) {
      examples.push_back({q, rng.next_bernoulli(0.5)});
    }
    SmoothBoostConfig config;
    config.target_error = 0.4;
    config.mu_max = 2.5;
    config.max_weight = d;
    config.round_cap = 12;
    config.advantage_floor = 1e-6;
    const auto outcome = smooth_boost(examples, nullptr, config);
    CHECK(outcome.max_density_ratio <= 2.5 + 1e-9);
  }

  TEST_CASE("zero-mass points are dropped and never re-queried") {
    const std::size_t d = 4;
    const BitVec dead = BitVec::from_string("1111");
    std::vector<LabeledExample> examples;
    for (const BitVec& q : enumerate_full_cube(d)) {
      examples.push_back({q, q.popcount() % 2 == 0});
    }
    std::size_t dead_queries = 0;
    std::size_t calls = 0;
    RestrictedEvalFn eval = [&](const BitVec& q) -> EvalAnswer {
      ++calls;
      if (q == dead) {
        ++dead_queries;
        return EvalAnswer{0.0, std::nullopt};
      }
      return EvalAnswer{1.0 / 16.0, q.popcount() % 2 == 0};
    };
    SmoothBoostConfig config;
    config.target_error = 0.3;
    config.mu_max = 4;
    config.max_weight = d;
    config.round_cap = 8;
    config.advantage_floor = 1e-9;
    const auto outcome = smooth_boost(examples, &eval, config);
    CHECK(outcome.rounds >= 1);
    CHECK(dead_queries == 1);  // looked up once, then dropped for good
    CHECK(calls == 16);        // one lookup per distinct point
  }

  TEST_CASE("label disagreement with the callback is rejected") {
    std::vector<LabeledExample> examples = {{BitVec::from_string("01"), true}};
    RestrictedEvalFn eval = [](const BitVec&) -> EvalAnswer {
      return EvalAnswer{0.5, false};
    };
    SmoothBoostConfig config;
    config.target_error = 0.1;
    config.mu_max = 2;
    config.max_weight = 2;
    CHECK_THROWS_AS(smooth_boost(examples, &eval, config), Error);
  }

  TEST_CASE("an adversarial advantage floor raises a learner failure") {
    const std::size_t d = 4;
    Rng rng(9);
    std::vector<LabeledExample> examples;
    for (const BitVec& q : enumerate_full_cube(d)) {
      examples.push_back({q, rng.next_bernoulli(0.5)});
    }
    SmoothBoostConfig config;
    config.target_error = 1e-6;  // unreachable
    config.mu_max = 16;
    config.max_weight = d;
    config.round_cap = 200;
    config.advantage_floor = 0.999;  // nothing correlates this well
    try {
      smooth_boost(examples, nullptr, config);
      FAIL("expected learner failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kLearnerFailure);
    }
  }
}

TEST_SUITE("fourier_learner") {
  TEST_CASE("budget follows the round cap formula") {
    const FourierLearner learner(8, 4.0, 1.0, 8, 0.1, 10);
    // samples = ceil(1 * 10 * ln(20) / 0.1) = ceil(299.57) = 300; doubled.
    CHECK(learner.budget(100, 0.1, 0.05) == 600);
    CHECK(learner.capability() ==
          LearnerCapability::kNeedsRestrictedEvaluation);
  }

  TEST_CASE("serialization round-trips") {
    std::vector<ParityMajorityHypothesis::Stage> stages = {
        {BitVec::from_string("0110"), 1}, {BitVec::from_string("1000"), -1}};
    const ParityMajorityHypothesis h(4, stages);
    const auto parsed = ParityMajorityHypothesis::from_json(h.to_json());
    for (const BitVec& q : enumerate_full_cube(4)) {
      CHECK(parsed->predict(q) == h.predict(q));
    }
  }
}
