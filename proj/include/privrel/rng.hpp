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

#ifndef PRIVREL_RNG_HPP
#define PRIVREL_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace privrel {

// Deterministic random source. All randomness in a run flows from one seed
// through named sub-streams (data-gen, oracle-noise, sampling, learner), so
// any module can be replayed in isolation. Sub-stream seeds depend only on
// the parent seed and the name, never on draw order. Raw mt19937_64 output
// is mapped to doubles by hand; std::*_distribution is avoided because its
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream whose seed is a mix of this stream's seed and the name.
  Rng stream(std::string_view name) const;

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1); never returns an endpoint, safe for inverse CDFs.
  double next_open_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), unbiased.
  std::uint64_t next_below(std::uint64_t n);

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace privrel

#endif  // PRIVREL_RNG_HPP
