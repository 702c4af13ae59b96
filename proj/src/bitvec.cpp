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

#include "privrel/bitvec.hpp"

#include <bit>

#include "privrel/error.hpp"

namespace privrel {

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      fail(ErrorCode::kParse,
           "bit string must contain only '0'/'1', got '" +
               std::string(1, bits[i]) + "' at position " + std::to_string(i));
    }
  }
  return v;
}

BitVec BitVec::from_bits(std::initializer_list<int> bits) {
  BitVec v(bits.size());
  std::size_t i = 0;
  for (int b : bits) {
    v.set(i++, b != 0);
  }
  return v;
}

std::size_t BitVec::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

bool BitVec::lex_less(const BitVec& a, const BitVec& b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool ai = a.get(i);
    const bool bi = b.get(i);
    if (ai != bi) return !ai;
  }
  return a.size() < b.size();
}

BitVec BitVec::concat(const BitVec& a, const BitVec& b) {
  BitVec v(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) v.set(i, a.get(i));
  for (std::size_t i = 0; i < b.size(); ++i) v.set(a.size() + i, b.get(i));
  return v;
}

BitVec BitVec::operator~() const {
  BitVec v(size_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    v.words_[w] = ~words_[w];
  }
  // Clear the padding bits so equality stays word-wise.
  if (size_ % 64 != 0 && !v.words_.empty()) {
    v.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
  return v;
}

std::size_t BitVecHash::operator()(const BitVec& v) const {
  // FNV-1a over the words plus the length.
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(v.size()));
  for (std::uint64_t w : v.words()) mix(w);
  return static_cast<std::size_t>(h);
}

bool conjunction_holds(const BitVec& q, const BitVec& u) {
  const auto& qw = q.words();
  const auto& uw = u.words();
  for (std::size_t i = 0; i < qw.size(); ++i) {
    if ((qw[i] & ~uw[i]) != 0) return false;
  }
  return true;
}

int and_parity(const BitVec& a, const BitVec& b) {
  const auto& aw = a.words();
  const auto& bw = b.words();
  int parity = 0;
  for (std::size_t i = 0; i < aw.size(); ++i) {
    parity ^= std::popcount(aw[i] & bw[i]) & 1;
  }
  return parity;
}

}  // namespace privrel
