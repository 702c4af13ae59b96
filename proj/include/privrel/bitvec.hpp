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

#ifndef PRIVREL_BITVEC_HPP
#define PRIVREL_BITVEC_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace privrel {

// Fixed-length bit vector. Data items, query descriptions and parity
// indices are all BitVecs of the configured dimension d; unused high bits
// of the last word are kept zero so equality and hashing are word-wise.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_(word_count(size)) {}

  static BitVec from_string(std::string_view bits);
  static BitVec from_bits(std::initializer_list<int> bits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value) {
    if (value) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else {
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }

  std::size_t popcount() const;
  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  // Lexicographic order on the bit string b_1 b_2 ... b_d.
  static bool lex_less(const BitVec& a, const BitVec& b);

  // a with every bit of b appended (dimension grows to a.size()+b.size()).
  static BitVec concat(const BitVec& a, const BitVec& b);

  BitVec operator~() const;

 private:
  static std::size_t word_count(std::size_t size) { return (size + 63) / 64; }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const;
};

// True iff no index i has q_i = 1 and u_i = 0.
bool conjunction_holds(const BitVec& q, const BitVec& u);

// popcount(a AND b) mod 2.
int and_parity(const BitVec& a, const BitVec& b);

}  // namespace privrel

#endif  // PRIVREL_BITVEC_HPP
