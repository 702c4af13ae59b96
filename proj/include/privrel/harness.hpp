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

#ifndef PRIVREL_HARNESS_HPP
#define PRIVREL_HARNESS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "privrel/distribution.hpp"
#include "privrel/reduction.hpp"

namespace privrel {

struct DatabaseSpec {
  enum class Kind { kBernoulli, kClustered, kFromFile };
  Kind kind = Kind::kBernoulli;
  std::size_t n = 0;
  double p = 0.5;                // kBernoulli
  std::vector<BitVec> centers;   // kClustered
  double flip_prob = 0;          // kClustered
  std::string path;              // kFromFile
  bool has_header = false;       // kFromFile

  static DatabaseSpec from_json(const nlohmann::json& j, std::size_t d);
  nlohmann::json to_json() const;
};

Database gen_database(const DatabaseSpec& spec, std::size_t d, Rng rng);

struct DistributionSpec {
  enum class Kind { kUniformFullCube, kUniformBk, kWeightedCsv };
  Kind kind = Kind::kUniformFullCube;
  std::size_t k = 0;  // kUniformBk
  std::string path;   // kWeightedCsv

  QueryDistribution build(std::size_t d) const;
  static DistributionSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct LearnerSpec {
  std::string name = "ptf_lp";  // or "fourier"
  // fourier knobs
  std::size_t max_parity_weight = 0;  // 0: d
  double advantage_floor = 0.01;
  std::size_t round_cap = 0;  // 0: default formula
  // ptf knobs
  std::uint64_t feature_cap = 200000;

  static LearnerSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct ExperimentConfig {
  PredicateKind predicate = PredicateKind::kMonotoneConjunction;
  std::size_t dimension = 0;
  std::size_t sparsity = 0;  // optional; 0 means unset
  DatabaseSpec database;
  ReleaseParams release;
  LearnerSpec learner;
  ParameterProfile profile;
  DistributionSpec distribution;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_json_text(const std::string& text);
  nlohmann::json to_json() const;

  PredicateSpec predicate_spec() const;
  std::unique_ptr<ThresholdLearner> make_learner() const;
};

struct QueryScore {
  BitVec query;
  double exact = 0;
  double released = 0;
  double error = 0;
  double mass = 0;
};

struct AccuracyReport {
  bool pass = false;
  double alpha = 0;
  double gamma = 0;
  double error_mass = 0;  // query mass with error > alpha
  double max_error = 0;
  double mean_error = 0;
  double quantile_50 = 0;
  double quantile_90 = 0;
  double quantile_99 = 0;
  bool exhaustive = false;
  std::size_t queries_scored = 0;
  PrivacyReport privacy;
  double learn_ms = 0;
  double score_ms = 0;

  nlohmann::json to_json() const;
};

// Exhaustive query enumeration is used whenever the support fits the
// guard; larger spaces are scored on a fresh evaluation sample.
inline constexpr std::uint64_t kExhaustiveScoringGuard = 1000000;

AccuracyReport score_synopsis(const Synopsis& synopsis, const Database& db,
                              const PredicateSpec& pred,
                              const QueryDistribution& g, double alpha,
                              double gamma, Rng eval_rng,
                              std::vector<QueryScore>* per_query = nullptr);

struct ExperimentResult {
  ExperimentConfig config;
  Synopsis synopsis;
  RunTranscript transcript;
  AccuracyReport report;
  std::vector<QueryScore> per_query;  // filled when scoring is exhaustive

  nlohmann::json report_json() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Re-score a serialized synopsis against a database (the `eval` surface).
ExperimentResult eval_synopsis_file(const ExperimentConfig& config,
                                    const std::string& synopsis_path,
                                    const std::optional<std::string>& db_csv,
                                    bool db_has_header);

// Writes report.json, synopsis.json, transcript.json and errors.csv under
// the directory; PRIVREL_OUT_DIR overrides the configured directory.
std::string write_experiment_outputs(const ExperimentResult& result,
                                     const std::string& output_dir);

// Independent exact answers for every query; a deliberately separate code
// path from counting_query so the two can cross-check each other.
std::vector<double> brute_force_answers(
    const Database& db, const PredicateSpec& pred,
    std::span<const BitVec> queries,
    std::uint64_t guard = kExhaustiveScoringGuard);

struct RatioSmokeReport {
  double delta_f = 0;
  double analytic_bound = 0;  // exp(eps*n*delta_f/b)
  double max_ratio = 0;
  std::size_t qualified_bins = 0;
  bool pass = false;

  nlohmann::json to_json() const;
};

// Histograms the oracle's noisy answer A_q under two adjacent databases
// and compares per-bin probability ratios against the analytic Laplace
// bound. Bin width is the Laplace scale; a bin qualifies when both
// histograms put mass >= 1e-3 on it.
RatioSmokeReport dp_ratio_smoke(const Database& db_a, const Database& db_b,
                                const BitVec& q, std::size_t trials,
                                double epsilon, std::int64_t b,
                                double tolerance, Rng rng);

}  // namespace privrel

#endif  // PRIVREL_HARNESS_HPP
