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

#include "privrel.h"

#include <cstring>
#include <new>
#include <string>

#include "privrel/error.hpp"
#include "privrel/harness.hpp"
#include "privrel/synopsis.hpp"
#include "privrel/verify.hpp"

using privrel::Error;
using privrel::ErrorCode;

struct privrel_database {
  privrel::Database db;
};

struct privrel_synopsis {
  privrel::Synopsis synopsis;
};

namespace {

thread_local std::string g_last_error;

int code_of(ErrorCode code) { return static_cast<int>(code); }

// Runs the body, translating exceptions into error codes and recording
// the message for privrel_last_error().
template <typename Fn>
int guarded(Fn&& body) {
  try {
    body();
    g_last_error.clear();
    return PRIVREL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PRIVREL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PRIVREL_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_nonnull(const void* p, const char* what) {
  if (p == nullptr) {
    privrel::fail(ErrorCode::kInvalidArgument,
                  std::string(what) + " must not be null");
  }
}

}  // namespace

extern "C" {

const char* privrel_version(void) { return "0.1.0"; }

const char* privrel_strerror(int code) {
  switch (code) {
    case PRIVREL_OK:
      return "ok";
    case PRIVREL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PRIVREL_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case PRIVREL_ERR_PARSE:
      return "parse error";
    case PRIVREL_ERR_IO:
      return "i/o error";
    case PRIVREL_ERR_DB_TOO_SMALL:
      return "database too small for the derived parameters";
    case PRIVREL_ERR_PARAMETER_OVERFLOW:
      return "derived parameter overflow";
    case PRIVREL_ERR_BUDGET_EXCEEDED:
      return "oracle budget exceeded";
    case PRIVREL_ERR_CAPABILITY:
      return "capability not available";
    case PRIVREL_ERR_FEATURE_OVERFLOW:
      return "feature count exceeds the cap";
    case PRIVREL_ERR_TRAINING:
      return "training failed";
    case PRIVREL_ERR_LEARNER_FAILURE:
      return "learner failed to find a hypothesis";
    case PRIVREL_ERR_INTERNAL:
      return "internal error";
    default:
      return "unknown error code";
  }
}

const char* privrel_last_error(void) { return g_last_error.c_str(); }

void privrel_string_free(char* s) { delete[] s; }

int privrel_database_load_csv(const char* path, int has_header,
                              privrel_database** out_db) {
  return guarded([&] {
    require_nonnull(path, "path");
    require_nonnull(out_db, "out_db");
    *out_db =
        new privrel_database{privrel::load_database_csv(path, has_header != 0)};
  });
}

int privrel_database_generate(const char* spec_json,
                              privrel_database** out_db) {
  return guarded([&] {
    require_nonnull(spec_json, "spec_json");
    require_nonnull(out_db, "out_db");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::exception& e) {
      privrel::fail(ErrorCode::kParse,
                    std::string("spec parse error: ") + e.what());
    }
    if (!j.contains("dimension")) {
      privrel::fail(ErrorCode::kParse, "spec is missing 'dimension'");
    }
    const auto d = j.at("dimension").get<std::size_t>();
    const auto seed = j.value("seed", std::uint64_t{1});
    const privrel::DatabaseSpec spec = privrel::DatabaseSpec::from_json(j, d);
    *out_db = new privrel_database{
        privrel::gen_database(spec, d, privrel::Rng(seed).stream("data-gen"))};
  });
}

int privrel_database_info(const privrel_database* db, uint64_t* out_size,
                          uint32_t* out_dimension) {
  return guarded([&] {
    require_nonnull(db, "db");
    if (out_size != nullptr) *out_size = db->db.size();
    if (out_dimension != nullptr) {
      *out_dimension = static_cast<uint32_t>(db->db.dimension());
    }
  });
}

void privrel_database_free(privrel_database* db) { delete db; }

int privrel_synopsis_load(const char* path, privrel_synopsis** out_synopsis) {
  return guarded([&] {
    require_nonnull(path, "path");
    require_nonnull(out_synopsis, "out_synopsis");
    *out_synopsis = new privrel_synopsis{privrel::Synopsis::load_file(path)};
  });
}

int privrel_synopsis_evaluate(const privrel_synopsis* synopsis,
                              const char* query_bits, double* out_value) {
  return guarded([&] {
    require_nonnull(synopsis, "synopsis");
    require_nonnull(query_bits, "query_bits");
    require_nonnull(out_value, "out_value");
    *out_value =
        synopsis->synopsis.evaluate(privrel::BitVec::from_string(query_bits));
  });
}

void privrel_synopsis_free(privrel_synopsis* synopsis) { delete synopsis; }

int privrel_params(const char* config_json, char** out_params_json) {
  return guarded([&] {
    require_nonnull(config_json, "config_json");
    require_nonnull(out_params_json, "out_params_json");
    const privrel::ExperimentConfig config =
        privrel::ExperimentConfig::from_json_text(config_json);
    const auto learner = config.make_learner();
    const privrel::BudgetMode mode =
        learner->capability() == privrel::LearnerCapability::kSamplingOnly
            ? privrel::BudgetMode::kSamplingOnly
            : privrel::BudgetMode::kEvaluationQueries;
    const privrel::QueryDistribution g =
        config.distribution.build(config.dimension);
    const privrel::DerivedParams dp = privrel::derive_params(
        config.release, g.support_size(),
        [&learner](std::int64_t n, double gamma, double beta) {
          return learner->budget(n, gamma, beta);
        },
        mode, config.profile);
    nlohmann::json out{
        {"k", dp.k},
        {"thresholds", dp.thresholds},
        {"n_prime", dp.n_prime},
        {"gamma_prime", dp.gamma_prime},
        {"beta_prime", dp.beta_prime},
        {"b_base", dp.b_base},
        {"b_iter", dp.b_iter},
        {"b_total", dp.b_total},
        {"min_db_size", dp.min_db_size},
        {"budget_mode", dp.budget_mode == privrel::BudgetMode::kSamplingOnly
                            ? "sampling_only"
                            : "evaluation_queries"},
        {"query_space_size", g.support_size()}};
    *out_params_json = copy_string(out.dump(2));
  });
}

int privrel_release(const char* config_json, const char* output_dir,
                    int* out_pass, char** out_report_json) {
  return guarded([&] {
    require_nonnull(config_json, "config_json");
    const privrel::ExperimentConfig config =
        privrel::ExperimentConfig::from_json_text(config_json);
    const privrel::ExperimentResult result = privrel::run_experiment(config);
    const std::string dir =
        output_dir != nullptr && *output_dir != '\0' ? output_dir
                                                     : config.output_dir;
    privrel::write_experiment_outputs(result, dir);
    if (out_pass != nullptr) *out_pass = result.report.pass ? 1 : 0;
    if (out_report_json != nullptr) {
      *out_report_json = copy_string(result.report_json().dump(2));
    }
  });
}

int privrel_eval(const char* config_json, const char* synopsis_path,
                 const char* database_csv, int database_has_header,
                 int* out_pass, char** out_report_json) {
  return guarded([&] {
    require_nonnull(config_json, "config_json");
    require_nonnull(synopsis_path, "synopsis_path");
    const privrel::ExperimentConfig config =
        privrel::ExperimentConfig::from_json_text(config_json);
    std::optional<std::string> db_override;
    if (database_csv != nullptr && *database_csv != '\0') {
      db_override = database_csv;
    }
    const privrel::ExperimentResult result = privrel::eval_synopsis_file(
        config, synopsis_path, db_override, database_has_header != 0);
    if (out_pass != nullptr) *out_pass = result.report.pass ? 1 : 0;
    if (out_report_json != nullptr) {
      nlohmann::json j = result.report.to_json();
      j["config"] = result.config.to_json();
      *out_report_json = copy_string(j.dump(2));
    }
  });
}

int privrel_verify(const char* suite, uint64_t seed, int* out_pass,
                   char** out_report_json) {
  return guarded([&] {
    require_nonnull(suite, "suite");
    const std::vector<privrel::VerifyReport> reports =
        privrel::run_verify_suite(suite, seed);
    bool all_pass = true;
    nlohmann::json out = nlohmann::json::array();
    for (const privrel::VerifyReport& r : reports) {
      all_pass = all_pass && r.pass;
      out.push_back(
          {{"suite", r.suite}, {"pass", r.pass}, {"details", r.details}});
    }
    if (out_pass != nullptr) *out_pass = all_pass ? 1 : 0;
    if (out_report_json != nullptr) {
      *out_report_json = copy_string(out.dump(2));
    }
  });
}

}  // extern "C"
