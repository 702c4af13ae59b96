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

#include "privrel/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "privrel/error.hpp"

namespace privrel {

namespace {

constexpr double kNormalizationSlack = 0x1.0p-30;

}  // namespace

QueryDistribution QueryDistribution::uniform_full_cube(std::size_t d) {
  if (d < 1 || d > 62) {
    fail(ErrorCode::kInvalidArgument,
         "uniform full-cube distribution requires 1 <= d <= 62");
  }
  QueryDistribution g;
  g.kind_ = DistributionKind::kUniformFullCube;
  g.dimension_ = d;
  return g;
}

QueryDistribution QueryDistribution::uniform_bk(std::size_t d, std::size_t k) {
  if (d < 1 || k > d) {
    fail(ErrorCode::kInvalidArgument, "uniform B_k requires 1 <= k <= d");
  }
  QueryDistribution g;
  g.kind_ = DistributionKind::kUniformBk;
  g.dimension_ = d;
  g.sparsity_ = k;
  const double total = static_cast<double>(bk_size(d, k));
  double acc = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    acc += static_cast<double>(binomial(d, j)) / total;
    g.class_cdf_.push_back(acc);
  }
  g.class_cdf_.back() = 1.0;
  return g;
}

QueryDistribution QueryDistribution::explicit_weighted(
    std::size_t d, std::vector<std::pair<BitVec, double>> table) {
  if (table.empty()) {
    fail(ErrorCode::kInvalidArgument, "weighted table must be nonempty");
  }
  double total = 0;
  for (const auto& [q, w] : table) {
    if (q.size() != d) {
      fail(ErrorCode::kDimensionMismatch,
           "weighted table entry has length " + std::to_string(q.size()) +
               ", expected " + std::to_string(d));
    }
    if (w < 0 || !std::isfinite(w)) {
      fail(ErrorCode::kInvalidArgument, "weights must be non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    fail(ErrorCode::kInvalidArgument,
         "weights sum to " + std::to_string(total) + ", expected 1");
  }

  QueryDistribution g;
  g.kind_ = DistributionKind::kExplicitWeighted;
  g.dimension_ = d;
  g.table_ = std::move(table);
  for (const auto& [q, w] : g.table_) {
    auto [it, inserted] = g.mass_by_query_.emplace(q, w);
    if (!inserted) it->second += w;
  }

  // Vose alias construction over the (renormalized) table.
  const std::size_t n = g.table_.size();
  g.alias_prob_.assign(n, 0.0);
  g.alias_index_.assign(n, 0);
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = g.table_[i].second / total * static_cast<double>(n);
  }
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    g.alias_prob_[s] = scaled[s];
    g.alias_index_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t i : large) g.alias_prob_[i] = 1.0;
  for (std::uint32_t i : small) g.alias_prob_[i] = 1.0;
  return g;
}

QueryDistribution QueryDistribution::load_weighted_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open distribution file: " + path);
  }
  std::vector<std::pair<BitVec, double>> table;
  std::size_t d = 0;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> tokens;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) tokens.push_back(token);
    if (tokens.size() < 2) {
      fail(ErrorCode::kParse,
           "row " + std::to_string(row) + ": need bits and a weight");
    }
    const std::size_t bits = tokens.size() - 1;
    if (d == 0) d = bits;
    if (bits != d) {
      fail(ErrorCode::kParse, "row " + std::to_string(row) +
                                  ": inconsistent bit count");
    }
    BitVec q(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (tokens[i] == "1") {
        q.set(i, true);
      } else if (tokens[i] != "0") {
        fail(ErrorCode::kParse, "row " + std::to_string(row) + ": token '" +
                                    tokens[i] + "' is not a bit");
      }
    }
    double w = 0;
    try {
      w = std::stod(tokens.back());
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, "row " + std::to_string(row) + ": weight '" +
                                  tokens.back() + "' is not a number");
    }
    table.emplace_back(std::move(q), w);
  }
  if (table.empty()) {
    fail(ErrorCode::kParse, "distribution file contains no rows: " + path);
  }
  return explicit_weighted(d, std::move(table));
}

QueryDistribution QueryDistribution::sampling_only() const {
  QueryDistribution g = *this;
  g.access_ = DistributionAccess::kSamplingOnly;
  return g;
}

std::uint64_t QueryDistribution::support_size() const {
  switch (kind_) {
    case DistributionKind::kUniformFullCube:
      return std::uint64_t{1} << dimension_;
    case DistributionKind::kUniformBk:
      return bk_size(dimension_, sparsity_);
    case DistributionKind::kExplicitWeighted: {
      std::uint64_t n = 0;
      for (const auto& [q, w] : mass_by_query_) {
        if (w > 0) ++n;
      }
      return n;
    }
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

BitVec QueryDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case DistributionKind::kUniformFullCube: {
      BitVec q(dimension_);
      for (std::size_t i = 0; i < dimension_; ++i) {
        q.set(i, rng.next_bernoulli(0.5));
      }
      return q;
    }
    case DistributionKind::kUniformBk: {
      // Weight class proportional to C(d,j)/|B_k|, then a uniform subset.
      const double u = rng.next_unit();
      std::size_t cls = 0;
      while (cls + 1 < class_cdf_.size() && u >= class_cdf_[cls]) ++cls;
      BitVec q(dimension_);
      // Partial Fisher-Yates over the index range.
      std::vector<std::uint32_t> idx(dimension_);
      std::iota(idx.begin(), idx.end(), 0);
      for (std::size_t j = 0; j < cls; ++j) {
        const std::size_t pick =
            j + static_cast<std::size_t>(rng.next_below(dimension_ - j));
        std::swap(idx[j], idx[pick]);
        q.set(idx[j], true);
      }
      return q;
    }
    case DistributionKind::kExplicitWeighted: {
      const std::size_t n = table_.size();
      const std::size_t slot = static_cast<std::size_t>(rng.next_below(n));
      const double u = rng.next_unit();
      return u < alias_prob_[slot] ? table_[slot].first
                                   : table_[alias_index_[slot]].first;
    }
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

double QueryDistribution::mass(const BitVec& q) const {
  if (access_ != DistributionAccess::kSamplingAndEvaluation) {
    fail(ErrorCode::kCapability,
         "distribution provides sampling access only");
  }
  if (q.size() != dimension_) {
    fail(ErrorCode::kDimensionMismatch,
         "query has length " + std::to_string(q.size()) + ", expected " +
             std::to_string(dimension_));
  }
  switch (kind_) {
    case DistributionKind::kUniformFullCube:
      return std::ldexp(1.0, -static_cast<int>(dimension_));
    case DistributionKind::kUniformBk:
      if (q.popcount() > sparsity_) return 0.0;
      return 1.0 / static_cast<double>(bk_size(dimension_, sparsity_));
    case DistributionKind::kExplicitWeighted: {
      auto it = mass_by_query_.find(q);
      return it == mass_by_query_.end() ? 0.0 : it->second;
    }
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

std::vector<BitVec> QueryDistribution::enumerate_support(
    std::uint64_t guard) const {
  switch (kind_) {
    case DistributionKind::kUniformFullCube:
      return enumerate_full_cube(dimension_, guard);
    case DistributionKind::kUniformBk:
      return enumerate_bk(dimension_, sparsity_, guard);
    case DistributionKind::kExplicitWeighted: {
      std::vector<BitVec> out;
      for (const auto& [q, w] : mass_by_query_) {
        if (w > 0) out.push_back(q);
      }
      std::sort(out.begin(), out.end(), BitVec::lex_less);
      return out;
    }
  }
  fail(ErrorCode::kInternal, "unreachable distribution kind");
}

std::optional<double> smoothness_wrt(const QueryDistribution& g_prime,
                                     const QueryDistribution& g,
                                     std::uint64_t guard) {
  double mu = 0;
  for (const BitVec& q : g_prime.enumerate_support(guard)) {
    const double p = g_prime.mass(q);
    if (p <= 0) continue;
    const double base = g.mass(q);
    if (base <= 0) return std::nullopt;
    mu = std::max(mu, p / base);
  }
  return mu;
}

}  // namespace privrel
