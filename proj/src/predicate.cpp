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

#include "privrel/predicate.hpp"

#include <cmath>

#include "privrel/error.hpp"

namespace privrel {

const char* predicate_kind_name(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::kMonotoneConjunction:
      return "conjunction";
    case PredicateKind::kParity:
      return "parity";
    case PredicateKind::kCustom:
      return "custom";
  }
  return "unknown";
}

PredicateKind predicate_kind_from_name(const std::string& name) {
  if (name == "conjunction") return PredicateKind::kMonotoneConjunction;
  if (name == "parity") return PredicateKind::kParity;
  if (name == "custom") return PredicateKind::kCustom;
  fail(ErrorCode::kParse, "unknown predicate kind: " + name);
}

bool eval_predicate(const PredicateSpec& pred, const BitVec& q,
                    const BitVec& u) {
  if (q.size() != u.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "query has length " + std::to_string(q.size()) + ", item has length " +
             std::to_string(u.size()));
  }
  switch (pred.kind) {
    case PredicateKind::kMonotoneConjunction:
      return conjunction_holds(q, u);
    case PredicateKind::kParity:
      return and_parity(q, u) == 1;
    case PredicateKind::kCustom:
      if (!pred.custom_eval) {
        fail(ErrorCode::kInvalidArgument, "custom predicate has no evaluator");
      }
      return pred.custom_eval(q, u);
  }
  fail(ErrorCode::kInternal, "unreachable predicate kind");
}

std::size_t counting_query_numerator(const Database& db,
                                     const PredicateSpec& pred,
                                     const BitVec& q) {
  if (q.size() != db.dimension()) {
    fail(ErrorCode::kDimensionMismatch,
         "query has length " + std::to_string(q.size()) +
             ", database dimension is " + std::to_string(db.dimension()));
  }
  std::size_t count = 0;
  switch (pred.kind) {
    case PredicateKind::kMonotoneConjunction:
      for (const BitVec& u : db.items()) {
        if (conjunction_holds(q, u)) ++count;
      }
      break;
    case PredicateKind::kParity:
      for (const BitVec& u : db.items()) {
        count += static_cast<std::size_t>(and_parity(q, u));
      }
      break;
    case PredicateKind::kCustom:
      for (const BitVec& u : db.items()) {
        if (eval_predicate(pred, q, u)) ++count;
      }
      break;
  }
  return count;
}

double counting_query(const Database& db, const PredicateSpec& pred,
                      const BitVec& q) {
  return static_cast<double>(counting_query_numerator(db, pred, q)) /
         static_cast<double>(db.size());
}

bool threshold_query(const Database& db, const PredicateSpec& pred,
                     const BitVec& q, double t) {
  const std::size_t count = counting_query_numerator(db, pred, q);
  // count/n >= t  <=>  count >= ceil(t*n) for integer count. The snapped
  // ceiling keeps the boundary inclusive when t*n is an integer up to
  // float rounding (e.g. t=0.7, n=10).
  return static_cast<double>(count) >=
         std::ceil(t * static_cast<double>(db.size()) - 1e-9);
}

bool eval_general_conjunction(const GeneralConjunction& c, const BitVec& u) {
  return conjunction_holds(c.require_one, u) &&
         conjunction_holds(c.require_zero, ~u);
}

Database general_to_monotone_database(const Database& db) {
  std::vector<BitVec> items;
  items.reserve(db.size());
  for (const BitVec& u : db.items()) {
    items.push_back(BitVec::concat(u, ~u));
  }
  return Database(2 * db.dimension(), std::move(items));
}

BitVec general_to_monotone_query(const GeneralConjunction& c) {
  if (c.require_one.size() != c.require_zero.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "general conjunction masks have different lengths");
  }
  return BitVec::concat(c.require_one, c.require_zero);
}

}  // namespace privrel
