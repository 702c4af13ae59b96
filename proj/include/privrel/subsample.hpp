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

#ifndef PRIVREL_SUBSAMPLE_HPP
#define PRIVREL_SUBSAMPLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "privrel/bitvec.hpp"
#include "privrel/database.hpp"
#include "privrel/predicate.hpp"
#include "privrel/rng.hpp"

namespace privrel {

struct SubsampleReport {
  std::size_t subsample_size = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;       // trials with max error < alpha
  double success_fraction = 0;
  double worst_max_error = 0;      // largest max error seen across trials
};

// Test-side verifier that a uniform subsample of ceil(10 ln|Q| / alpha^2)
// items approximates every enumerated query answer to within alpha. Not
// part of the release path.
SubsampleReport subsample_verify(const Database& db, const PredicateSpec& pred,
                                 std::span<const BitVec> queries, double alpha,
                                 std::size_t trials, Rng& rng);

}  // namespace privrel

#endif  // PRIVREL_SUBSAMPLE_HPP
