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

#ifndef PRIVREL_DISTRIBUTION_HPP
#define PRIVREL_DISTRIBUTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "privrel/bitvec.hpp"
#include "privrel/queryset.hpp"
#include "privrel/rng.hpp"

namespace privrel {

enum class DistributionKind { kUniformFullCube, kUniformBk, kExplicitWeighted };
enum class DistributionAccess { kSamplingOnly, kSamplingAndEvaluation };

// A distribution over query descriptions. Built-in kinds expose exact mass
// evaluation; a distribution can be downgraded to sampling-only to model
// callers that may not evaluate masses. Immutable after construction.
class QueryDistribution {
 public:
  static QueryDistribution uniform_full_cube(std::size_t d);
  static QueryDistribution uniform_bk(std::size_t d, std::size_t k);
  // Masses must be non-negative and sum to 1 within 2^-30. Sampling uses
  // an alias table, so draws are O(1).
  static QueryDistribution explicit_weighted(
      std::size_t d, std::vector<std::pair<BitVec, double>> table);
  // CSV rows: d comma-separated bits followed by a weight.
  static QueryDistribution load_weighted_csv(const std::string& path);

  QueryDistribution sampling_only() const;

  DistributionKind kind() const { return kind_; }
  DistributionAccess access() const { return access_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t sparsity() const { return sparsity_; }
  std::uint64_t support_size() const;

  BitVec sample(Rng& rng) const;

  // Exact mass G[q]; throws kCapability when the distribution is
  // sampling-only.
  double mass(const BitVec& q) const;

  // Desk-scale test utility; release paths never enumerate the support.
  std::vector<BitVec> enumerate_support(
      std::uint64_t guard = kDefaultEnumerationGuard) const;

 private:
  QueryDistribution() = default;

  DistributionKind kind_ = DistributionKind::kUniformFullCube;
  DistributionAccess access_ = DistributionAccess::kSamplingAndEvaluation;
  std::size_t dimension_ = 0;
  std::size_t sparsity_ = 0;  // k for UniformBk

  // Explicit tables (alias method).
  std::vector<std::pair<BitVec, double>> table_;
  std::unordered_map<BitVec, double, BitVecHash> mass_by_query_;
  std::vector<double> alias_prob_;
  std::vector<std::uint32_t> alias_index_;

  // Cumulative weight-class masses for UniformBk.
  std::vector<double> class_cdf_;
};

// Minimal mu with G'[q] <= mu*G[q] everywhere, or nullopt if G' puts mass
// where G has none. Both supports must be enumerable at desk scale.
std::optional<double> smoothness_wrt(
    const QueryDistribution& g_prime, const QueryDistribution& g,
    std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace privrel

#endif  // PRIVREL_DISTRIBUTION_HPP
