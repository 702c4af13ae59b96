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

// Command-line front end. Talks to the engine exclusively through the
// shared-library C API in privrel.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "privrel.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CLI::ValidationError("config", "cannot open file: " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_failure(const char* what, int code) {
  std::cerr << what << " failed: " << privrel_strerror(code);
  const char* detail = privrel_last_error();
  if (detail != nullptr && *detail != '\0') {
    std::cerr << " (" << detail << ")";
  }
  std::cerr << "\n";
  return 2;
}

void print_and_free(char* json) {
  if (json != nullptr) {
    std::cout << json << "\n";
    privrel_string_free(json);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privrel: differentially private counting-query release"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string synopsis_path;
  std::string database_path;
  bool database_header = false;
  std::string suite = "all";
  std::uint64_t seed = 1;
  bool quiet = false;

  CLI::App* release = app.add_subcommand(
      "release", "run an experiment: learn and score a synopsis");
  release->add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  release->add_option("--out", output_dir,
                      "output directory (default: config, then "
                      "PRIVREL_OUT_DIR)");
  release->add_flag("--quiet", quiet, "suppress the report on stdout");

  CLI::App* eval = app.add_subcommand(
      "eval", "re-score a serialized synopsis against a database");
  eval->add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  eval->add_option("--synopsis", synopsis_path, "synopsis file")->required();
  eval->add_option("--database", database_path,
                   "database CSV overriding the config's source");
  eval->add_flag("--has-header", database_header,
                 "database CSV starts with a header row");
  eval->add_flag("--quiet", quiet, "suppress the report on stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the property-verifier suites");
  verify->add_option("--suite", suite,
                     "agreement|damping|ptf|subsample|all (default all)");
  verify->add_option("--seed", seed, "verifier seed (default 1)");

  CLI::App* params = app.add_subcommand(
      "params", "print the derived parameters for a config");
  params->add_option("--config", config_path, "experiment config (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (release->parsed()) {
      const std::string config = read_file(config_path);
      int pass = 0;
      char* report = nullptr;
      const int rc =
          privrel_release(config.c_str(),
                          output_dir.empty() ? nullptr : output_dir.c_str(),
                          &pass, quiet ? nullptr : &report);
      if (rc != PRIVREL_OK) return report_failure("release", rc);
      print_and_free(report);
      return pass ? 0 : 1;
    }
    if (eval->parsed()) {
      const std::string config = read_file(config_path);
      int pass = 0;
      char* report = nullptr;
      const int rc = privrel_eval(
          config.c_str(), synopsis_path.c_str(),
          database_path.empty() ? nullptr : database_path.c_str(),
          database_header ? 1 : 0, &pass, quiet ? nullptr : &report);
      if (rc != PRIVREL_OK) return report_failure("eval", rc);
      print_and_free(report);
      return pass ? 0 : 1;
    }
    if (verify->parsed()) {
      int pass = 0;
      char* report = nullptr;
      const int rc = privrel_verify(suite.c_str(), seed, &pass, &report);
      if (rc != PRIVREL_OK) return report_failure("verify", rc);
      print_and_free(report);
      return pass ? 0 : 1;
    }
    if (params->parsed()) {
      const std::string config = read_file(config_path);
      char* out = nullptr;
      const int rc = privrel_params(config.c_str(), &out);
      if (rc != PRIVREL_OK) return report_failure("params", rc);
      print_and_free(out);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
