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

#ifndef PRIVREL_DATABASE_HPP
#define PRIVREL_DATABASE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "privrel/bitvec.hpp"

namespace privrel {

// Ordered multiset of d-bit items; the sensitive input. Immutable after
// construction.
class Database {
 public:
  Database(std::size_t dimension, std::vector<BitVec> items);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return items_.size(); }
  const std::vector<BitVec>& items() const { return items_; }
  const BitVec& item(std::size_t i) const { return items_[i]; }

 private:
  std::size_t dimension_;
  std::vector<BitVec> items_;
};

// One row per item, d comma-separated 0/1 values. Any non-bit token is a
// load error naming the offending row.
Database load_database_csv(const std::string& path, bool has_header);

// Multiset edit distance: number of items that must be changed to turn one
// database into the other. Databases of unequal size are never adjacent.
std::size_t multiset_edit_distance(const Database& a, const Database& b);

bool adjacent(const Database& a, const Database& b);

}  // namespace privrel

#endif  // PRIVREL_DATABASE_HPP
