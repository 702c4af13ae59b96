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

#ifndef PRIVREL_QUERYSET_HPP
#define PRIVREL_QUERYSET_HPP

#include <cstdint>
#include <vector>

#include "privrel/bitvec.hpp"

namespace privrel {

// Default guard for exhaustive query enumeration; callers may raise it.
inline constexpr std::uint64_t kDefaultEnumerationGuard = 1u << 20;

// C(n, k) with overflow detection (throws kParameterOverflow).
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// |B_k| = sum_{j<=k} C(d, j).
std::uint64_t bk_size(std::size_t d, std::size_t k);

// All of {0,1}^d, in increasing integer order (bit 0 = attribute 1).
std::vector<BitVec> enumerate_full_cube(
    std::size_t d, std::uint64_t guard = kDefaultEnumerationGuard);

// All queries of Hamming weight <= k, grouped by weight.
std::vector<BitVec> enumerate_bk(
    std::size_t d, std::size_t k,
    std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace privrel

#endif  // PRIVREL_QUERYSET_HPP
