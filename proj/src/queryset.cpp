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

#include "privrel/queryset.hpp"

#include <numeric>

#include "privrel/error.hpp"

namespace privrel {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t numerator = n - k + i;
    if (result > ~std::uint64_t{0} / numerator) {
      fail(ErrorCode::kParameterOverflow, "binomial coefficient overflows");
    }
    result = result * numerator / i;
  }
  return result;
}

std::uint64_t bk_size(std::size_t d, std::size_t k) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= k && j <= d; ++j) {
    const std::uint64_t c = binomial(d, j);
    if (total > ~std::uint64_t{0} - c) {
      fail(ErrorCode::kParameterOverflow, "|B_k| overflows");
    }
    total += c;
  }
  return total;
}

std::vector<BitVec> enumerate_full_cube(std::size_t d, std::uint64_t guard) {
  if (d >= 63 || (std::uint64_t{1} << d) > guard) {
    fail(ErrorCode::kInvalidArgument,
         "full cube enumeration over d=" + std::to_string(d) +
             " exceeds the guard");
  }
  std::vector<BitVec> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
    BitVec q(d);
    for (std::size_t i = 0; i < d; ++i) q.set(i, (x >> i) & 1);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<BitVec> enumerate_bk(std::size_t d, std::size_t k,
                                 std::uint64_t guard) {
  const std::uint64_t size = bk_size(d, k);
  if (size > guard) {
    fail(ErrorCode::kInvalidArgument,
         "|B_k| = " + std::to_string(size) + " exceeds the guard");
  }
  std::vector<BitVec> out;
  out.reserve(static_cast<std::size_t>(size));
  out.emplace_back(d);  // weight 0
  std::vector<std::size_t> idx;
  for (std::size_t w = 1; w <= k && w <= d; ++w) {
    // Enumerate w-subsets of [d] in lexicographic index order.
    idx.resize(w);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      BitVec q(d);
      for (std::size_t i : idx) q.set(i, true);
      out.push_back(std::move(q));
      // Advance to the next combination.
      std::size_t pos = w;
      while (pos > 0 && idx[pos - 1] == d - w + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace privrel
