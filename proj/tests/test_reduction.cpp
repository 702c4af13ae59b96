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

#include <atomic>
#include <cmath>

#include "doctest.h"
#include "privrel/error.hpp"
#include "privrel/fourier.hpp"
#include "privrel/ptf.hpp"
#include "privrel/queryset.hpp"
#include "privrel/reduction.hpp"

using namespace privrel;

namespace {

// A hypothesis with a fixed truth table, for aggregation tests.
class TableHypothesis : public Hypothesis {
 public:
  explicit TableHypothesis(bool value) : value_(value) {}
  bool predict(const BitVec&) const override { return value_; }
  nlohmann::json to_json() const override { return {{"type", "table"}}; }

 private:
  bool value_;
};

std::vector<std::unique_ptr<Hypothesis>> constant_hypotheses(
    std::initializer_list<int> bits) {
  std::vector<std::unique_ptr<Hypothesis>> hs;
  for (int b : bits) hs.push_back(std::make_unique<TableHypothesis>(b != 0));
  return hs;
}

Database constant_db(std::size_t n, const char* bits) {
  std::vector<BitVec> items(n, BitVec::from_string(bits));
  const std::size_t d = items[0].size();
  return Database(d, std::move(items));
}

ReleaseParams release_params(double alpha, double beta, double gamma,
                             double epsilon) {
  return ReleaseParams{alpha, beta, gamma, epsilon};
}

}  // namespace

TEST_SUITE("aggregation") {
  TEST_CASE("all ones and all zeros") {
    const BitVec q(3);
    auto ones = constant_hypotheses({1, 1, 1, 1, 1});
    CHECK(aggregate_hypotheses(ones, q) == doctest::Approx(5.0 / 6.0));
    auto zeros = constant_hypotheses({0, 0, 0, 0, 0});
    CHECK(aggregate_hypotheses(zeros, q) == 0.0);
  }

  TEST_CASE("spec instance k=5, predictions 11100") {
    const BitVec q(3);
    auto hs = constant_hypotheses({1, 1, 1, 0, 0});
    CHECK(aggregate_hypotheses(hs, q) == doctest::Approx(0.5));
  }

  TEST_CASE("one flipped hypothesis moves the answer by at most 2/(k+1)") {
    // Exhaustive over f on a fine grid and all single flips, k <= 40.
    for (std::size_t k : {1u, 2u, 5u, 17u, 40u}) {
      const double spacing = 1.0 / static_cast<double>(k + 1);
      for (std::size_t step = 0; step <= 2 * (k + 1); ++step) {
        const double f = static_cast<double>(step) / (2.0 * (k + 1));
        std::vector<int> exact_bits(k);
        for (std::size_t i = 1; i <= k; ++i) {
          exact_bits[i - 1] = f >= static_cast<double>(i) * spacing ? 1 : 0;
        }
        for (std::size_t flip = 0; flip <= k; ++flip) {
          std::vector<std::unique_ptr<Hypothesis>> hs;
          for (std::size_t i = 0; i < k; ++i) {
            bool bit = exact_bits[i] != 0;
            if (flip > 0 && i == flip - 1) bit = !bit;
            hs.push_back(std::make_unique<TableHypothesis>(bit));
          }
          const double answer = aggregate_hypotheses(hs, BitVec(2));
          CHECK(std::abs(answer - f) <= 2.0 * spacing + 1e-12);
        }
      }
    }
  }
}

TEST_SUITE("synopsis") {
  TEST_CASE("constant synopsis evaluates to its value everywhere") {
    const Synopsis s = Synopsis::constant(0.4);
    CHECK(s.evaluate(BitVec::from_string("0101")) == 0.4);
    CHECK(s.evaluate(BitVec::from_string("1111")) == 0.4);
    CHECK(s.is_constant());
  }

  TEST_CASE("exact threshold hypotheses at f=0.63, k=30") {
    // t_i = i/31; count of t_i <= 0.63 is 19.
    std::vector<std::unique_ptr<Hypothesis>> hs;
    for (int i = 1; i <= 30; ++i) {
      hs.push_back(
          std::make_unique<TableHypothesis>(static_cast<double>(i) / 31.0 <=
                                            0.63));
    }
    const Synopsis s = Synopsis::aggregated(std::move(hs));
    CHECK(s.evaluate(BitVec(2)) == doctest::Approx(19.0 / 31.0));
    CHECK(std::abs(s.evaluate(BitVec(2)) - 0.63) <= 1.0 / 31.0);
  }

  TEST_CASE("values always land in [0,1]") {
    CHECK_THROWS_AS(Synopsis::constant(1.5), Error);
    auto hs = constant_hypotheses({1, 1, 1});
    const Synopsis s = Synopsis::aggregated(std::move(hs));
    const double v = s.evaluate(BitVec(4));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  TEST_CASE("file round-trip preserves evaluation") {
    std::map<Monomial, double> terms;
    terms[{}] = 1.0;
    terms[{1}] = -2.0;
    std::vector<std::unique_ptr<Hypothesis>> hs;
    hs.push_back(std::make_unique<PTFHypothesis>(3, terms, 0.0));
    hs.push_back(std::make_unique<ParityMajorityHypothesis>(
        3, std::vector<ParityMajorityHypothesis::Stage>{
               {BitVec::from_string("011"), 1}}));
    const Synopsis s = Synopsis::aggregated(std::move(hs));
    const std::string path = "privrel_synopsis_roundtrip.json";
    s.save_file(path);
    const Synopsis loaded = Synopsis::load_file(path);
    for (const BitVec& q : enumerate_full_cube(3)) {
      CHECK(loaded.evaluate(q) == s.evaluate(q));
    }
    std::remove(path.c_str());
  }
}

TEST_SUITE("priv_learn") {
  TEST_CASE("constant database with negligible noise tracks exact answers") {
    // Every item u*: f(q) = P(q, u*) in {0,1}. Huge epsilon kills noise.
    const Database db = constant_db(400, "101100");
    const QueryDistribution g = QueryDistribution::uniform_bk(6, 2);
    const ReleaseParams rp = release_params(0.2, 0.1, 0.1, 1e6);
    DegreeSchedule schedule{DegreeScheduleKind::kSparseBk, 2, 1.0};
    const PtfLpLearner learner(6, schedule, 0.02);
    const PrivLearnResult result =
        priv_learn(db, PredicateSpec::monotone_conjunction(), g, rp,
                   g.support_size(), learner, ParameterProfile::desk(),
                   Rng(1234));
    CHECK_FALSE(result.synopsis.is_constant());
    const PredicateSpec conj = PredicateSpec::monotone_conjunction();
    double mass_wrong = 0;
    const auto support = g.enumerate_support();
    for (const BitVec& q : support) {
      const double exact = counting_query(db, conj, q);
      if (std::abs(result.synopsis.evaluate(q) - exact) > rp.alpha) {
        mass_wrong += 1.0;
      }
    }
    CHECK(mass_wrong / static_cast<double>(support.size()) <= rp.gamma);
    // Budget soundness for a sampling-only learner.
    CHECK(result.transcript.privacy.distinct_queries <=
          2 * result.transcript.params.b_iter);
    CHECK_FALSE(result.transcript.privacy.exhausted);
  }

  TEST_CASE("distribution concentrated near a threshold stops early") {
    // f = 1/2 exactly; to make t=1/2 a threshold, alpha = 0.5 gives k=6,
    // spacing 1/7... instead craft f equal to one of the t_i directly.
    // alpha = 0.3 -> k = 10, spacing 1/11; choose f = 5/11 via 5 of 11
    // items matching.
    std::vector<BitVec> items;
    for (int i = 0; i < 11; ++i) {
      items.push_back(i < 5 ? BitVec::from_string("11")
                            : BitVec::from_string("01"));
    }
    std::vector<BitVec> many;
    for (int rep = 0; rep < 40; ++rep) {
      for (const BitVec& u : items) many.push_back(u);
    }
    const Database db(2, std::move(many));  // f(10) = f(11) = 5/11
    const QueryDistribution g = QueryDistribution::explicit_weighted(
        2, {{BitVec::from_string("10"), 0.99},
            {BitVec::from_string("00"), 0.01}});
    const ReleaseParams rp = release_params(0.3, 0.2, 0.2, 1e6);
    DegreeSchedule schedule{DegreeScheduleKind::kSparseBk, 2, 1.0};
    const PtfLpLearner learner(2, schedule, 0.05);
    const PrivLearnResult result =
        priv_learn(db, PredicateSpec::monotone_conjunction(), g, rp, 4,
                   learner, ParameterProfile::desk(), Rng(5));
    REQUIRE(result.synopsis.is_constant());
    CHECK(result.synopsis.constant_value() == doctest::Approx(5.0 / 11.0));
    CHECK(result.transcript.early_terminated);
  }

  TEST_CASE("all database access flows through the oracle") {
    // A counting predicate wrapper: every item-level evaluation increments
    // the counter. The total must equal (distinct queries) * n, i.e. the
    // oracle's counting-query evaluations and nothing else.
    std::atomic<std::size_t> touches{0};
    const PredicateSpec counting = PredicateSpec::custom(
        [&touches](const BitVec& q, const BitVec& u) {
          ++touches;
          return conjunction_holds(q, u);
        });
    const Database db = constant_db(150, "1010");
    const QueryDistribution g = QueryDistribution::uniform_bk(4, 2);
    const ReleaseParams rp = release_params(0.25, 0.1, 0.2, 1e5);
    DegreeSchedule schedule{DegreeScheduleKind::kSparseBk, 2, 1.0};
    const PtfLpLearner learner(4, schedule, 0.02);
    const PrivLearnResult result = priv_learn(
        db, counting, g, rp, g.support_size(), learner,
        ParameterProfile::desk(), Rng(77));
    CHECK(touches ==
          static_cast<std::size_t>(result.transcript.privacy.distinct_queries) *
              db.size());
  }

  TEST_CASE("same seed, same synopsis; different seed, different noise") {
    const Database db = constant_db(300, "1100");
    const QueryDistribution g = QueryDistribution::uniform_bk(4, 2);
    const ReleaseParams rp = release_params(0.25, 0.1, 0.2, 1e4);
    DegreeSchedule schedule{DegreeScheduleKind::kSparseBk, 2, 1.0};
    const PtfLpLearner learner(4, schedule, 0.02);
    auto run = [&](std::uint64_t seed) {
      return priv_learn(db, PredicateSpec::monotone_conjunction(), g, rp,
                        g.support_size(), learner, ParameterProfile::desk(),
                        Rng(seed));
    };
    const auto a = run(42);
    const auto b = run(42);
    CHECK(a.synopsis.to_json() == b.synopsis.to_json());
    CHECK(a.transcript.to_json().at("iterations") ==
          b.transcript.to_json().at("iterations"));
  }

  TEST_CASE("a database below the derived minimum is rejected upfront") {
    const Database db = constant_db(3, "1100");
    const QueryDistribution g = QueryDistribution::uniform_bk(4, 2);
    const ReleaseParams rp = release_params(0.25, 0.1, 0.2, 1.0);
    DegreeSchedule schedule{DegreeScheduleKind::kSparseBk, 2, 1.0};
    const PtfLpLearner learner(4, schedule, 0.02);
    try {
      priv_learn(db, PredicateSpec::monotone_conjunction(), g, rp,
                 g.support_size(), learner, ParameterProfile::desk(), Rng(1));
      FAIL("expected kDatabaseTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDatabaseTooSmall);
    }
  }

  TEST_CASE("an evaluating learner requires an evaluating distribution") {
    const Database db = constant_db(50000, "110010");
    const QueryDistribution g =
        QueryDistribution::uniform_full_cube(6).sampling_only();
    const ReleaseParams rp = release_params(0.25, 0.1, 0.2, 1e5);
    const FourierLearner learner(6, 2.0 / rp.gamma, 0.001, 6, 0.01, 8);
    try {
      priv_learn(db, PredicateSpec::parity(), g, rp, 64, learner,
                 ParameterProfile::desk(), Rng(2));
      FAIL("expected capability error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCapability);
    }
  }

  TEST_CASE("evaluation queries answer per the conditional-mass rule") {
    // Drive run_priv_learn with an instrumented learner that pokes the
    // evaluation callback itself.
    const Database db = constant_db(200, "1100");
    const QueryDistribution g = QueryDistribution::uniform_bk(4, 2);
    const ReleaseParams rp = release_params(0.25, 0.1, 0.2, 1e6);

    class ProbeLearner : public ThresholdLearner {
     public:
      const char* name() const override { return "probe"; }
      LearnerCapability capability() const override {
        return LearnerCapability::kNeedsRestrictedEvaluation;
      }
      std::int64_t budget(std::int64_t, double, double) const override {
        return 4;
      }
      TrainOutcome train(const TrainRequest& request) const override {
        REQUIRE(request.restricted_eval != nullptr);
        // A sampled point was accepted, so its mass estimate must be
        // G[q] * b_iter / |B_i| and its label must match.
        const LabeledExample& ex = request.examples.front();
        const EvalAnswer cached = (*request.restricted_eval)(ex.query);
        REQUIRE(cached.label.has_value());
        CHECK(*cached.label == ex.label);
        CHECK(cached.mass > 0);
        ++probes;
        TrainOutcome outcome;
        outcome.hypothesis = std::make_unique<TableHypothesis>(ex.label);
        return outcome;
      }
      mutable int probes = 0;
    };

    const ProbeLearner learner;
    const DerivedParams dp = derive_params(
        rp, g.support_size(),
        [&learner](std::int64_t n, double gamma, double beta) {
          return learner.budget(n, gamma, beta);
        },
        BudgetMode::kEvaluationQueries, ParameterProfile::desk());
    OracleConfig config;
    config.tolerance = rp.alpha / 7;
    config.budget = dp.b_total;
    config.epsilon = rp.epsilon;
    ThresholdOracle oracle(db, PredicateSpec::monotone_conjunction(), config,
                           Rng(3).stream("noise"));
    const PrivLearnResult result =
        run_priv_learn(oracle, g, rp, dp, learner, Rng(3));
    CHECK(learner.probes == dp.k);
    CHECK(result.transcript.privacy.distinct_queries <=
          2 * dp.k * dp.b_iter);
  }
}
