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

#include "privrel/synopsis.hpp"

#include <fstream>

#include "privrel/error.hpp"
#include "privrel/fourier.hpp"
#include "privrel/ptf.hpp"

namespace privrel {

namespace {

constexpr int kFormatVersion = 1;

std::unique_ptr<Hypothesis> hypothesis_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ptf") return PTFHypothesis::from_json(j);
  if (type == "parity_majority") return ParityMajorityHypothesis::from_json(j);
  fail(ErrorCode::kParse, "unknown hypothesis type: " + type);
}

}  // namespace

double aggregate_hypotheses(
    std::span<const std::unique_ptr<Hypothesis>> hypotheses, const BitVec& q) {
  if (hypotheses.empty()) {
    fail(ErrorCode::kInvalidArgument, "aggregation needs k >= 1 hypotheses");
  }
  std::size_t ones = 0;
  for (const auto& h : hypotheses) {
    if (h->predict(q)) ++ones;
  }
  return static_cast<double>(ones) /
         static_cast<double>(hypotheses.size() + 1);
}

Synopsis Synopsis::constant(double value) {
  if (!(value >= 0) || !(value <= 1)) {
    fail(ErrorCode::kInvalidArgument, "constant synopsis value must be in [0,1]");
  }
  Synopsis s;
  s.constant_value_ = value;
  return s;
}

Synopsis Synopsis::aggregated(
    std::vector<std::unique_ptr<Hypothesis>> hypotheses) {
  if (hypotheses.empty()) {
    fail(ErrorCode::kInvalidArgument, "aggregated synopsis needs hypotheses");
  }
  for (const auto& h : hypotheses) {
    if (!h) fail(ErrorCode::kInvalidArgument, "null hypothesis");
  }
  Synopsis s;
  s.hypotheses_ = std::move(hypotheses);
  return s;
}

double Synopsis::evaluate(const BitVec& q) const {
  if (is_constant()) return constant_value_;
  return aggregate_hypotheses(hypotheses_, q);
}

nlohmann::json Synopsis::to_json() const {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  if (is_constant()) {
    j["variant"] = "constant";
    j["value"] = constant_value_;
    return j;
  }
  j["variant"] = "aggregated";
  j["k"] = hypotheses_.size();
  j["spacing"] = spacing();
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : hypotheses_) hs.push_back(h->to_json());
  j["hypotheses"] = std::move(hs);
  return j;
}

Synopsis Synopsis::from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != kFormatVersion) {
    fail(ErrorCode::kParse, "unsupported synopsis format version");
  }
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "constant") {
    return constant(j.at("value").get<double>());
  }
  if (variant != "aggregated") {
    fail(ErrorCode::kParse, "unknown synopsis variant: " + variant);
  }
  std::vector<std::unique_ptr<Hypothesis>> hs;
  for (const auto& hj : j.at("hypotheses")) {
    hs.push_back(hypothesis_from_json(hj));
  }
  if (hs.size() != j.at("k").get<std::size_t>()) {
    fail(ErrorCode::kParse, "synopsis k disagrees with the hypothesis list");
  }
  return aggregated(std::move(hs));
}

void Synopsis::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write synopsis file: " + path);
  out << to_json().dump(2) << "\n";
}

Synopsis Synopsis::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open synopsis file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("synopsis parse error: ") + e.what());
  }
  return from_json(j);
}

}  // namespace privrel
