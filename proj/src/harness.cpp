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

#include "privrel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "privrel/error.hpp"
#include "privrel/fourier.hpp"
#include "privrel/ptf.hpp"

namespace privrel {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    fail(ErrorCode::kParse,
         std::string("config is missing required field '") + field + "'");
  }
  return j.at(field);
}

template <typename T>
T field_as(const nlohmann::json& j, const char* field) {
  try {
    return require_field(j, field).get<T>();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kParse,
         std::string("config field '") + field + "' has the wrong type");
  }
}

template <typename T>
T field_or(const nlohmann::json& j, const char* field, T fallback) {
  if (!j.is_object() || !j.contains(field)) return fallback;
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kParse,
         std::string("config field '") + field + "' has the wrong type");
  }
}

int scoring_threads() {
  const char* env = std::getenv("PRIVREL_THREADS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

}  // namespace

DatabaseSpec DatabaseSpec::from_json(const nlohmann::json& j, std::size_t d) {
  DatabaseSpec spec;
  const std::string type = field_as<std::string>(j, "type");
  if (type == "bernoulli") {
    spec.kind = Kind::kBernoulli;
    spec.n = field_as<std::size_t>(j, "n");
    spec.p = field_or<double>(j, "p", 0.5);
    if (spec.p < 0 || spec.p > 1) {
      fail(ErrorCode::kParse, "database.p must lie in [0,1]");
    }
  } else if (type == "clustered") {
    spec.kind = Kind::kClustered;
    spec.n = field_as<std::size_t>(j, "n");
    spec.flip_prob = field_as<double>(j, "flip_prob");
    if (spec.flip_prob < 0 || spec.flip_prob > 1) {
      fail(ErrorCode::kParse, "database.flip_prob must lie in [0,1]");
    }
    for (const auto& c : require_field(j, "centers")) {
      spec.centers.push_back(BitVec::from_string(c.get<std::string>()));
      if (spec.centers.back().size() != d) {
        fail(ErrorCode::kParse, "database.centers entries must have length d");
      }
    }
    if (spec.centers.empty()) {
      fail(ErrorCode::kParse, "database.centers must be nonempty");
    }
  } else if (type == "file") {
    spec.kind = Kind::kFromFile;
    spec.path = field_as<std::string>(j, "path");
    spec.has_header = field_or<bool>(j, "has_header", false);
  } else {
    fail(ErrorCode::kParse, "unknown database type: " + type);
  }
  if (spec.kind != Kind::kFromFile && spec.n < 1) {
    fail(ErrorCode::kParse, "database.n must be >= 1");
  }
  return spec;
}

nlohmann::json DatabaseSpec::to_json() const {
  switch (kind) {
    case Kind::kBernoulli:
      return {{"type", "bernoulli"}, {"n", n}, {"p", p}};
    case Kind::kClustered: {
      nlohmann::json centers_json = nlohmann::json::array();
      for (const BitVec& c : centers) centers_json.push_back(c.to_string());
      return {{"type", "clustered"},
              {"n", n},
              {"flip_prob", flip_prob},
              {"centers", std::move(centers_json)}};
    }
    case Kind::kFromFile:
      return {{"type", "file"}, {"path", path}, {"has_header", has_header}};
  }
  fail(ErrorCode::kInternal, "unreachable database kind");
}

Database gen_database(const DatabaseSpec& spec, std::size_t d, Rng rng) {
  switch (spec.kind) {
    case DatabaseSpec::Kind::kBernoulli: {
      std::vector<BitVec> items;
      items.reserve(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        BitVec u(d);
        for (std::size_t b = 0; b < d; ++b) {
          u.set(b, rng.next_bernoulli(spec.p));
        }
        items.push_back(std::move(u));
      }
      return Database(d, std::move(items));
    }
    case DatabaseSpec::Kind::kClustered: {
      std::vector<BitVec> items;
      items.reserve(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const BitVec& center = spec.centers[static_cast<std::size_t>(
            rng.next_below(spec.centers.size()))];
        BitVec u = center;
        for (std::size_t b = 0; b < d; ++b) {
          if (rng.next_bernoulli(spec.flip_prob)) u.set(b, !u.get(b));
        }
        items.push_back(std::move(u));
      }
      return Database(d, std::move(items));
    }
    case DatabaseSpec::Kind::kFromFile: {
      Database db = load_database_csv(spec.path, spec.has_header);
      if (db.dimension() != d) {
        fail(ErrorCode::kParse,
             "database file has dimension " + std::to_string(db.dimension()) +
                 ", config says " + std::to_string(d));
      }
      return db;
    }
  }
  fail(ErrorCode::kInternal, "unreachable database kind");
}

QueryDistribution DistributionSpec::build(std::size_t d) const {
  switch (kind) {
    case Kind::kUniformFullCube:
      return QueryDistribution::uniform_full_cube(d);
    case Kind::kUniformBk:
      return QueryDistribution::uniform_bk(d, k);
    case Kind::kWeightedCsv:
      return QueryDistribution::load_weighted_csv(path);
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

DistributionSpec DistributionSpec::from_json(const nlohmann::json& j) {
  DistributionSpec spec;
  const std::string type = field_as<std::string>(j, "type");
  if (type == "uniform_full") {
    spec.kind = Kind::kUniformFullCube;
  } else if (type == "uniform_bk") {
    spec.kind = Kind::kUniformBk;
    spec.k = field_as<std::size_t>(j, "k");
  } else if (type == "weighted_csv") {
    spec.kind = Kind::kWeightedCsv;
    spec.path = field_as<std::string>(j, "path");
  } else {
    fail(ErrorCode::kParse, "unknown distribution type: " + type);
  }
  return spec;
}

nlohmann::json DistributionSpec::to_json() const {
  switch (kind) {
    case Kind::kUniformFullCube:
      return {{"type", "uniform_full"}};
    case Kind::kUniformBk:
      return {{"type", "uniform_bk"}, {"k", k}};
    case Kind::kWeightedCsv:
      return {{"type", "weighted_csv"}, {"path", path}};
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

LearnerSpec LearnerSpec::from_json(const nlohmann::json& j) {
  LearnerSpec spec;
  spec.name = field_as<std::string>(j, "name");
  if (spec.name != "ptf_lp" && spec.name != "fourier") {
    fail(ErrorCode::kParse, "unknown learner: " + spec.name);
  }
  spec.max_parity_weight = field_or<std::size_t>(j, "max_parity_weight", 0);
  spec.advantage_floor = field_or<double>(j, "advantage_floor", 0.01);
  spec.round_cap = field_or<std::size_t>(j, "round_cap", 0);
  spec.feature_cap = field_or<std::uint64_t>(j, "feature_cap", 200000);
  return spec;
}

nlohmann::json LearnerSpec::to_json() const {
  nlohmann::json j{{"name", name}};
  if (name == "fourier") {
    j["max_parity_weight"] = max_parity_weight;
    j["advantage_floor"] = advantage_floor;
    j["round_cap"] = round_cap;
  } else {
    j["feature_cap"] = feature_cap;
  }
  return j;
}

namespace {

ParameterProfile profile_from_json(const nlohmann::json& j) {
  const std::string name = field_as<std::string>(j, "name");
  ParameterProfile profile;
  if (name == "theory") {
    profile = ParameterProfile::theory();
  } else if (name == "desk") {
    profile = ParameterProfile::desk();
  } else {
    fail(ErrorCode::kParse, "unknown profile: " + name);
  }
  profile.c_nprime = field_or<double>(j, "c_nprime", profile.c_nprime);
  profile.c_biter = field_or<double>(j, "c_biter", profile.c_biter);
  profile.c_dbsize = field_or<double>(j, "c_dbsize", profile.c_dbsize);
  profile.c_degree_sparse =
      field_or<double>(j, "c_degree_sparse", profile.c_degree_sparse);
  profile.c_degree_full =
      field_or<double>(j, "c_degree_full", profile.c_degree_full);
  profile.c_budget = field_or<double>(j, "c_budget", profile.c_budget);
  return profile;
}

nlohmann::json profile_to_json(const ParameterProfile& p) {
  return {{"name", p.name},         {"c_nprime", p.c_nprime},
          {"c_biter", p.c_biter},   {"c_dbsize", p.c_dbsize},
          {"c_degree_sparse", p.c_degree_sparse},
          {"c_degree_full", p.c_degree_full},
          {"c_budget", p.c_budget}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.predicate =
      predicate_kind_from_name(field_as<std::string>(j, "predicate"));
  if (config.predicate == PredicateKind::kCustom) {
    fail(ErrorCode::kParse,
         "custom predicates are an API-level hook and cannot be configured "
         "from a file");
  }
  config.dimension = field_as<std::size_t>(j, "dimension");
  if (config.dimension < 1 || config.dimension > 62) {
    fail(ErrorCode::kParse, "dimension must lie in [1, 62]");
  }
  config.sparsity = field_or<std::size_t>(j, "sparsity", 0);
  if (config.sparsity > config.dimension) {
    fail(ErrorCode::kParse, "sparsity must be <= dimension");
  }
  config.database =
      DatabaseSpec::from_json(require_field(j, "database"), config.dimension);

  const nlohmann::json& release = require_field(j, "release");
  config.release.alpha = field_as<double>(release, "alpha");
  config.release.beta = field_as<double>(release, "beta");
  config.release.gamma = field_as<double>(release, "gamma");
  config.release.epsilon = field_as<double>(release, "epsilon");
  config.release.validate();

  config.learner = LearnerSpec::from_json(require_field(j, "learner"));
  config.profile = profile_from_json(require_field(j, "profile"));
  config.distribution =
      DistributionSpec::from_json(require_field(j, "distribution"));
  config.seed = field_or<std::uint64_t>(j, "seed", 1);
  config.output_dir = field_or<std::string>(j, "output", "out");
  return config;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"predicate", predicate_kind_name(predicate)},
          {"dimension", dimension},
          {"sparsity", sparsity},
          {"database", database.to_json()},
          {"release",
           {{"alpha", release.alpha},
            {"beta", release.beta},
            {"gamma", release.gamma},
            {"epsilon", release.epsilon}}},
          {"learner", learner.to_json()},
          {"profile", profile_to_json(profile)},
          {"distribution", distribution.to_json()},
          {"seed", seed},
          {"output", output_dir}};
}

PredicateSpec ExperimentConfig::predicate_spec() const {
  switch (predicate) {
    case PredicateKind::kMonotoneConjunction:
      return PredicateSpec::monotone_conjunction();
    case PredicateKind::kParity:
      return PredicateSpec::parity();
    case PredicateKind::kCustom:
      break;
  }
  fail(ErrorCode::kInvalidArgument, "config cannot carry a custom predicate");
}

std::unique_ptr<ThresholdLearner> ExperimentConfig::make_learner() const {
  if (learner.name == "ptf_lp") {
    DegreeSchedule schedule;
    if (sparsity > 0) {
      schedule.kind = DegreeScheduleKind::kSparseBk;
      schedule.sparsity = sparsity;
      schedule.multiplier = profile.c_degree_sparse;
    } else if (distribution.kind == DistributionSpec::Kind::kUniformBk) {
      schedule.kind = DegreeScheduleKind::kSparseBk;
      schedule.sparsity = distribution.k;
      schedule.multiplier = profile.c_degree_sparse;
    } else {
      schedule.kind = DegreeScheduleKind::kFullCube;
      schedule.multiplier = profile.c_degree_full;
    }
    return std::make_unique<PtfLpLearner>(dimension, schedule,
                                          profile.c_budget,
                                          learner.feature_cap);
  }
  // fourier: the reduction hands the learner the conditional distribution,
  // which is (2/gamma)-smooth relative to the base.
  return std::make_unique<FourierLearner>(
      dimension, 2.0 / release.gamma, profile.c_budget,
      learner.max_parity_weight, learner.advantage_floor, learner.round_cap);
}

nlohmann::json AccuracyReport::to_json() const {
  return {{"pass", pass},
          {"alpha", alpha},
          {"gamma", gamma},
          {"error_mass", error_mass},
          {"max_error", max_error},
          {"mean_error", mean_error},
          {"quantiles",
           {{"p50", quantile_50}, {"p90", quantile_90}, {"p99", quantile_99}}},
          {"exhaustive", exhaustive},
          {"queries_scored", queries_scored},
          {"privacy",
           {{"distinct_queries", privacy.distinct_queries},
            {"budget", privacy.budget},
            {"laplace_scale", privacy.laplace_scale},
            {"epsilon", privacy.epsilon},
            {"exhausted", privacy.exhausted}}},
          {"timing", {{"learn_ms", learn_ms}, {"score_ms", score_ms}}}};
}

AccuracyReport score_synopsis(const Synopsis& synopsis, const Database& db,
                              const PredicateSpec& pred,
                              const QueryDistribution& g, double alpha,
                              double gamma, Rng eval_rng,
                              std::vector<QueryScore>* per_query) {
  const auto started = std::chrono::steady_clock::now();
  AccuracyReport report;
  report.alpha = alpha;
  report.gamma = gamma;

  std::vector<BitVec> queries;
  std::vector<double> masses;
  report.exhaustive = g.support_size() <= kExhaustiveScoringGuard;
  if (report.exhaustive) {
    queries = g.enumerate_support(kExhaustiveScoringGuard);
    masses.reserve(queries.size());
    for (const BitVec& q : queries) masses.push_back(g.mass(q));
  } else {
    constexpr std::size_t kEvalSamples = 100000;
    queries.reserve(kEvalSamples);
    for (std::size_t i = 0; i < kEvalSamples; ++i) {
      queries.push_back(g.sample(eval_rng));
    }
    masses.assign(queries.size(), 1.0 / static_cast<double>(queries.size()));
  }

  std::vector<double> exact(queries.size());
  std::vector<double> released(queries.size());
  const int threads = scoring_threads();
  auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      exact[i] = counting_query(db, pred, queries[i]);
      released[i] = synopsis.evaluate(queries[i]);
    }
  };
  if (threads <= 1 || queries.size() < 256) {
    score_range(0, queries.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (queries.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(queries.size(), t * chunk);
      const std::size_t end = std::min(queries.size(), begin + chunk);
      if (begin < end) pool.emplace_back(score_range, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<double> errors(queries.size());
  double mass_total = 0;
  double weighted_error = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    errors[i] = std::abs(released[i] - exact[i]);
    mass_total += masses[i];
    weighted_error += masses[i] * errors[i];
    if (errors[i] > alpha) report.error_mass += masses[i];
    report.max_error = std::max(report.max_error, errors[i]);
  }
  report.queries_scored = queries.size();
  report.mean_error = mass_total > 0 ? weighted_error / mass_total : 0;
  if (mass_total > 0) report.error_mass /= mass_total;
  report.pass = report.error_mass <= gamma;

  std::vector<double> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&sorted](double p) {
    if (sorted.empty()) return 0.0;
    const std::size_t idx = std::min(
        sorted.size() - 1,
        static_cast<std::size_t>(p * static_cast<double>(sorted.size())));
    return sorted[idx];
  };
  report.quantile_50 = quantile(0.50);
  report.quantile_90 = quantile(0.90);
  report.quantile_99 = quantile(0.99);

  if (per_query != nullptr && report.exhaustive) {
    per_query->clear();
    per_query->reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
      per_query->push_back(
          {queries[i], exact[i], released[i], errors[i], masses[i]});
    }
  }
  report.score_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  return report;
}

nlohmann::json ExperimentResult::report_json() const {
  nlohmann::json j = report.to_json();
  j["config"] = config.to_json();
  j["transcript"] = transcript.to_json();
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  const Database db =
      gen_database(config.database, config.dimension, rng.stream("data-gen"));
  const QueryDistribution g = config.distribution.build(config.dimension);
  const PredicateSpec pred = config.predicate_spec();
  const std::unique_ptr<ThresholdLearner> learner = config.make_learner();

  PrivLearnResult learned =
      priv_learn(db, pred, g, config.release, g.support_size(), *learner,
                 config.profile, rng);
  const double learn_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();

  ExperimentResult result{config, std::move(learned.synopsis),
                          std::move(learned.transcript), AccuracyReport{},
                          {}};
  result.report = score_synopsis(result.synopsis, db, pred, g,
                                 config.release.alpha, config.release.gamma,
                                 rng.stream("evaluation"), &result.per_query);
  result.report.privacy = result.transcript.privacy;
  result.report.learn_ms = learn_ms;
  return result;
}

ExperimentResult eval_synopsis_file(const ExperimentConfig& config,
                                    const std::string& synopsis_path,
                                    const std::optional<std::string>& db_csv,
                                    bool db_has_header) {
  Rng rng(config.seed);
  DatabaseSpec db_spec = config.database;
  if (db_csv.has_value()) {
    db_spec.kind = DatabaseSpec::Kind::kFromFile;
    db_spec.path = *db_csv;
    db_spec.has_header = db_has_header;
  }
  const Database db =
      gen_database(db_spec, config.dimension, rng.stream("data-gen"));
  const QueryDistribution g = config.distribution.build(config.dimension);
  const PredicateSpec pred = config.predicate_spec();

  ExperimentResult result{config, Synopsis::load_file(synopsis_path),
                          RunTranscript{}, AccuracyReport{},
                          {}};
  result.report = score_synopsis(result.synopsis, db, pred, g,
                                 config.release.alpha, config.release.gamma,
                                 rng.stream("evaluation"), &result.per_query);
  return result;
}

std::string write_experiment_outputs(const ExperimentResult& result,
                                     const std::string& output_dir) {
  std::string dir = output_dir;
  if (const char* env = std::getenv("PRIVREL_OUT_DIR")) {
    if (*env != '\0') dir = env;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::kIo, "cannot create output directory: " + dir);
  }

  auto write_json = [&dir](const char* name, const nlohmann::json& j) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) fail(ErrorCode::kIo, "cannot write " + path);
    out << j.dump(2) << "\n";
  };
  write_json("report.json", result.report_json());
  write_json("transcript.json", result.transcript.to_json());
  result.synopsis.save_file(dir + "/synopsis.json");

  const std::string csv_path = dir + "/errors.csv";
  std::ofstream csv(csv_path);
  if (!csv) fail(ErrorCode::kIo, "cannot write " + csv_path);
  csv << "query,exact,released,error\n";
  csv.precision(17);
  for (const QueryScore& s : result.per_query) {
    csv << s.query.to_string() << "," << s.exact << "," << s.released << ","
        << s.error << "\n";
  }
  return dir;
}

std::vector<double> brute_force_answers(const Database& db,
                                        const PredicateSpec& pred,
                                        std::span<const BitVec> queries,
                                        std::uint64_t guard) {
  if (queries.size() > guard) {
    fail(ErrorCode::kInvalidArgument,
         "brute-force table would exceed the size guard");
  }
  std::vector<double> answers;
  answers.reserve(queries.size());
  for (const BitVec& q : queries) {
    std::size_t count = 0;
    for (const BitVec& u : db.items()) {
      if (eval_predicate(pred, q, u)) ++count;
    }
    answers.push_back(static_cast<double>(count) /
                      static_cast<double>(db.size()));
  }
  return answers;
}

nlohmann::json RatioSmokeReport::to_json() const {
  return {{"delta_f", delta_f},
          {"analytic_bound", analytic_bound},
          {"max_ratio", max_ratio},
          {"qualified_bins", qualified_bins},
          {"pass", pass}};
}

RatioSmokeReport dp_ratio_smoke(const Database& db_a, const Database& db_b,
                                const BitVec& q, std::size_t trials,
                                double epsilon, std::int64_t b,
                                double tolerance, Rng rng) {
  if (!adjacent(db_a, db_b)) {
    fail(ErrorCode::kInvalidArgument, "databases are not adjacent");
  }
  const PredicateSpec pred = PredicateSpec::monotone_conjunction();
  const double f_a = counting_query(db_a, pred, q);
  const double f_b = counting_query(db_b, pred, q);
  const double n = static_cast<double>(db_a.size());
  const double scale = static_cast<double>(b) / (epsilon * n);

  RatioSmokeReport report;
  report.delta_f = std::abs(f_a - f_b);
  report.analytic_bound =
      std::exp(epsilon * n * report.delta_f / static_cast<double>(b));

  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> bins;
  auto bin_of = [scale](double x) {
    return static_cast<std::int64_t>(std::floor(x / scale));
  };
  for (std::size_t i = 0; i < trials; ++i) {
    bins[bin_of(f_a + laplace_sample(scale, rng))].first++;
  }
  for (std::size_t i = 0; i < trials; ++i) {
    bins[bin_of(f_b + laplace_sample(scale, rng))].second++;
  }

  const double min_mass = 1e-3;
  const double total = static_cast<double>(trials);
  report.max_ratio = 1.0;
  for (const auto& [bin, counts] : bins) {
    const double mass_a = static_cast<double>(counts.first) / total;
    const double mass_b = static_cast<double>(counts.second) / total;
    if (mass_a < min_mass || mass_b < min_mass) continue;
    ++report.qualified_bins;
    const double ratio = std::max(mass_a / mass_b, mass_b / mass_a);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.pass =
      report.max_ratio <= report.analytic_bound * (1.0 + tolerance) &&
      report.qualified_bins > 0;
  return report;
}

}  // namespace privrel
