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

#ifndef PRIVREL_PREDICATE_HPP
#define PRIVREL_PREDICATE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "privrel/bitvec.hpp"
#include "privrel/database.hpp"

namespace privrel {

enum class PredicateKind { kMonotoneConjunction, kParity, kCustom };

const char* predicate_kind_name(PredicateKind kind);
PredicateKind predicate_kind_from_name(const std::string& name);

// The query-class predicate P(q, u). Custom predicates supply a total,
// deterministic truth function.
struct PredicateSpec {
  PredicateKind kind = PredicateKind::kMonotoneConjunction;
  std::function<bool(const BitVec& q, const BitVec& u)> custom_eval;

  static PredicateSpec monotone_conjunction() {
    return PredicateSpec{PredicateKind::kMonotoneConjunction, nullptr};
  }
  static PredicateSpec parity() {
    return PredicateSpec{PredicateKind::kParity, nullptr};
  }
  static PredicateSpec custom(
      std::function<bool(const BitVec&, const BitVec&)> eval) {
    return PredicateSpec{PredicateKind::kCustom, std::move(eval)};
  }
};

// P(q, u). Conjunction: 1 iff no index has q_i = 1 and u_i = 0. Parity:
// sum of q_i over indices with u_i = 1, mod 2.
bool eval_predicate(const PredicateSpec& pred, const BitVec& q, const BitVec& u);

// Number of items of D satisfying P(q, .). Exact integer arithmetic; the
// fraction is formed only at the end.
std::size_t counting_query_numerator(const Database& db,
                                     const PredicateSpec& pred,
                                     const BitVec& q);

// f^D(q): fraction of items satisfying the query's predicate.
double counting_query(const Database& db, const PredicateSpec& pred,
                      const BitVec& q);

// f^D_t(q): 1 iff f^D(q) >= t. The comparison is done on the exact
// numerator to avoid float trouble at the boundary.
bool threshold_query(const Database& db, const PredicateSpec& pred,
                     const BitVec& q, double t);

// A (possibly non-monotone) conjunction: require_one lists attributes that
// must be 1, require_zero those that must be 0.
struct GeneralConjunction {
  BitVec require_one;
  BitVec require_zero;
};

bool eval_general_conjunction(const GeneralConjunction& c, const BitVec& u);

// Domain-doubling transform: item u over {0,1}^d maps to (u, ~u) over
// {0,1}^{2d}, and a general conjunction becomes a monotone one of the same
// locality.
Database general_to_monotone_database(const Database& db);
BitVec general_to_monotone_query(const GeneralConjunction& c);

}  // namespace privrel

#endif  // PRIVREL_PREDICATE_HPP
