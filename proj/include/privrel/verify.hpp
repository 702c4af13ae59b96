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

#ifndef PRIVREL_VERIFY_HPP
#define PRIVREL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace privrel {

struct VerifyReport {
  std::string suite;
  bool pass = false;
  nlohmann::json details;
};

// Conditioned oracle agreement: with injected noise below tolerance/3,
// non-bottom answers must equal the exact threshold value and bottom
// answers must be within tolerance of the threshold.
VerifyReport verify_oracle_agreement(std::uint64_t seed,
                                     std::size_t num_queries);

// Damping-polynomial sweep: endpoint s(k)=1 within 1e-9, |s(j)| <= eps on
// the integer grid, and the expansion degree exactly
// ceil(sqrt(k))*ceil(log2(1/eps)), for all k <= 64 and eps in {0.1, 0.01}.
VerifyReport verify_damping_sweep();

// Randomized explicit-PTF representability: sign agreement with the exact
// threshold function over all of B_k.
VerifyReport verify_explicit_ptf(std::uint64_t seed, std::size_t instances);

// Subsampling existence check at d=8, conjunctions over B_2, alpha=0.2.
VerifyReport verify_subsample(std::uint64_t seed);

// suite: one of "agreement", "damping", "ptf", "subsample", "all".
std::vector<VerifyReport> run_verify_suite(const std::string& suite,
                                           std::uint64_t seed);

}  // namespace privrel

#endif  // PRIVREL_VERIFY_HPP
