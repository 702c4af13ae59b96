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

// Exercises the shared-library surface exactly as an embedder would: only
// privrel.h, error codes and opaque handles.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "privrel.h"

namespace {

const char* kConfig = R"({
  "predicate": "conjunction",
  "dimension": 4,
  "sparsity": 2,
  "database": {"type": "bernoulli", "n": 400, "p": 0.5},
  "release": {"alpha": 0.25, "beta": 0.1, "gamma": 0.2, "epsilon": 100000.0},
  "learner": {"name": "ptf_lp"},
  "profile": {"name": "desk", "c_budget": 0.02},
  "distribution": {"type": "uniform_bk", "k": 2},
  "seed": 7,
  "output": "privrel_capi_out"
})";

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and error strings") {
    CHECK(std::strlen(privrel_version()) > 0);
    CHECK(std::string(privrel_strerror(PRIVREL_OK)) == "ok");
    CHECK(std::string(privrel_strerror(PRIVREL_ERR_PARSE)) == "parse error");
  }

  TEST_CASE("database handles: load, info, generate, errors") {
    const std::string path = "privrel_capi_db.csv";
    {
      std::ofstream out(path);
      out << "1,0,1,0\n0,1,1,0\n";
    }
    privrel_database* db = nullptr;
    REQUIRE(privrel_database_load_csv(path.c_str(), 0, &db) == PRIVREL_OK);
    uint64_t n = 0;
    uint32_t d = 0;
    CHECK(privrel_database_info(db, &n, &d) == PRIVREL_OK);
    CHECK(n == 2);
    CHECK(d == 4);
    privrel_database_free(db);
    std::remove(path.c_str());

    privrel_database* missing = nullptr;
    const int rc = privrel_database_load_csv("no_such_file.csv", 0, &missing);
    CHECK(rc == PRIVREL_ERR_IO);
    CHECK(std::strlen(privrel_last_error()) > 0);

    privrel_database* generated = nullptr;
    REQUIRE(privrel_database_generate(
                R"({"dimension": 6, "seed": 3, "type": "bernoulli",
                    "n": 25, "p": 0.5})",
                &generated) == PRIVREL_OK);
    CHECK(privrel_database_info(generated, &n, &d) == PRIVREL_OK);
    CHECK(n == 25);
    CHECK(d == 6);
    privrel_database_free(generated);
  }

  TEST_CASE("params reports the derived cascade") {
    char* out = nullptr;
    REQUIRE(privrel_params(kConfig, &out) == PRIVREL_OK);
    const auto j = nlohmann::json::parse(out);
    CHECK(j.at("k").get<int>() == 12);  // ceil(3/0.25)
    CHECK(j.at("budget_mode").get<std::string>() == "sampling_only");
    CHECK(j.at("b_total").get<long long>() ==
          2 * j.at("b_iter").get<long long>());
    CHECK(j.at("query_space_size").get<int>() == 11);
    privrel_string_free(out);
  }

  TEST_CASE("release writes artifacts and synopsis handles evaluate") {
    int pass = -1;
    char* report = nullptr;
    REQUIRE(privrel_release(kConfig, "privrel_capi_out", &pass, &report) ==
            PRIVREL_OK);
    CHECK(pass == 1);
    REQUIRE(report != nullptr);
    const auto j = nlohmann::json::parse(report);
    CHECK(j.at("pass").get<bool>());
    privrel_string_free(report);

    privrel_synopsis* synopsis = nullptr;
    REQUIRE(privrel_synopsis_load("privrel_capi_out/synopsis.json",
                                  &synopsis) == PRIVREL_OK);
    double value = -1;
    CHECK(privrel_synopsis_evaluate(synopsis, "0000", &value) == PRIVREL_OK);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
    // Wrong dimension surfaces as a dimension error.
    CHECK(privrel_synopsis_evaluate(synopsis, "00000", &value) ==
          PRIVREL_ERR_DIMENSION_MISMATCH);
    privrel_synopsis_free(synopsis);

    // Re-score through eval and expect the same pass flag.
    int eval_pass = -1;
    REQUIRE(privrel_eval(kConfig, "privrel_capi_out/synopsis.json", nullptr, 0,
                         &eval_pass, nullptr) == PRIVREL_OK);
    CHECK(eval_pass == 1);
    std::filesystem::remove_all("privrel_capi_out");
  }

  TEST_CASE("verify runs the fast suites") {
    int pass = -1;
    char* report = nullptr;
    REQUIRE(privrel_verify("damping", 1, &pass, &report) == PRIVREL_OK);
    CHECK(pass == 1);
    const auto j = nlohmann::json::parse(report);
    REQUIRE(j.is_array());
    CHECK(j.at(0).at("suite").get<std::string>() == "damping");
    CHECK(j.at(0).at("pass").get<bool>());
    privrel_string_free(report);

    CHECK(privrel_verify("bogus", 1, &pass, nullptr) ==
          PRIVREL_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("null arguments are invalid, not crashes") {
    CHECK(privrel_params(nullptr, nullptr) == PRIVREL_ERR_INVALID_ARGUMENT);
    CHECK(privrel_database_load_csv(nullptr, 0, nullptr) ==
          PRIVREL_ERR_INVALID_ARGUMENT);
    CHECK(privrel_release(nullptr, nullptr, nullptr, nullptr) ==
          PRIVREL_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("config errors map to parse codes") {
    int pass = 0;
    CHECK(privrel_release("{not json", nullptr, &pass, nullptr) ==
          PRIVREL_ERR_PARSE);
    CHECK(privrel_release(R"({"predicate": "conjunction"})", nullptr, &pass,
                          nullptr) == PRIVREL_ERR_PARSE);
  }

  TEST_CASE("undersized databases map to the dedicated code") {
    nlohmann::json j = nlohmann::json::parse(kConfig);
    j["database"]["n"] = 2;
    j["release"]["epsilon"] = 0.5;
    const std::string text = j.dump();
    int pass = 0;
    CHECK(privrel_release(text.c_str(), nullptr, &pass, nullptr) ==
          PRIVREL_ERR_DB_TOO_SMALL);
  }
}
