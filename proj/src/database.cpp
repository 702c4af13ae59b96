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

#include "privrel/database.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "privrel/error.hpp"

namespace privrel {

Database::Database(std::size_t dimension, std::vector<BitVec> items)
    : dimension_(dimension), items_(std::move(items)) {
  if (dimension_ < 1) {
    fail(ErrorCode::kInvalidArgument, "database dimension must be >= 1");
  }
  if (items_.empty()) {
    fail(ErrorCode::kInvalidArgument, "database must contain at least one item");
  }
  for (const BitVec& u : items_) {
    if (u.size() != dimension_) {
      fail(ErrorCode::kDimensionMismatch,
           "database item has length " + std::to_string(u.size()) +
               ", expected " + std::to_string(dimension_));
    }
  }
}

Database load_database_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open database file: " + path);
  }
  std::vector<BitVec> items;
  std::size_t dimension = 0;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && has_header) continue;
    if (line.empty()) continue;
    std::vector<bool> bits;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      // Trim surrounding blanks.
      std::size_t b = token.find_first_not_of(" \t");
      std::size_t e = token.find_last_not_of(" \t");
      token = (b == std::string::npos) ? "" : token.substr(b, e - b + 1);
      if (token == "0") {
        bits.push_back(false);
      } else if (token == "1") {
        bits.push_back(true);
      } else {
        fail(ErrorCode::kParse, "row " + std::to_string(row) +
                                    ": token '" + token + "' is not a bit");
      }
    }
    if (bits.empty()) {
      fail(ErrorCode::kParse, "row " + std::to_string(row) + ": empty row");
    }
    if (dimension == 0) {
      dimension = bits.size();
    } else if (bits.size() != dimension) {
      fail(ErrorCode::kParse, "row " + std::to_string(row) + ": has " +
                                  std::to_string(bits.size()) +
                                  " values, expected " +
                                  std::to_string(dimension));
    }
    BitVec item(dimension);
    for (std::size_t i = 0; i < dimension; ++i) item.set(i, bits[i]);
    items.push_back(std::move(item));
  }
  if (items.empty()) {
    fail(ErrorCode::kParse, "database file contains no items: " + path);
  }
  return Database(dimension, std::move(items));
}

std::size_t multiset_edit_distance(const Database& a, const Database& b) {
  std::unordered_map<BitVec, long long, BitVecHash> counts;
  for (const BitVec& u : a.items()) ++counts[u];
  for (const BitVec& u : b.items()) --counts[u];
  long long only_in_a = 0;
  long long only_in_b = 0;
  for (const auto& [item, c] : counts) {
    if (c > 0) only_in_a += c;
    if (c < 0) only_in_b -= c;
  }
  return static_cast<std::size_t>(only_in_a > only_in_b ? only_in_a : only_in_b);
}

bool adjacent(const Database& a, const Database& b) {
  return a.size() == b.size() && multiset_edit_distance(a, b) <= 1;
}

}  // namespace privrel
