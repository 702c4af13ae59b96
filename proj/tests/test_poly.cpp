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

#include <cmath>

#include "doctest.h"
#include "privrel/error.hpp"
#include "privrel/poly.hpp"

using namespace privrel;

TEST_SUITE("chebyshev") {
  TEST_CASE("base cases and one recurrence step") {
    CHECK(chebyshev(0).coefficients == std::vector<double>{1.0});
    CHECK(chebyshev(1).coefficients == std::vector<double>{0.0, 1.0});
    CHECK(chebyshev(2).coefficients == std::vector<double>{-1.0, 0.0, 2.0});
    CHECK(chebyshev(3).coefficients ==
          std::vector<double>{0.0, -3.0, 0.0, 4.0});
  }

  TEST_CASE("value recurrence is exactly 1 at x = 1 for r <= 32") {
    for (std::size_t r = 0; r <= 32; ++r) {
      CHECK(chebyshev_value(r, 1.0) == 1.0);
    }
  }

  TEST_CASE("coefficient Horner agrees with the value recurrence") {
    for (std::size_t r = 0; r <= 32; ++r) {
      const UnivariatePoly p = chebyshev(r);
      for (double x : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
        // Coefficients of C_32 reach ~2^31, so Horner at |x| <= 1 keeps
        // roughly 1e-4 absolute accuracy.
        CHECK(std::abs(p.eval(x) - chebyshev_value(r, x)) < 1e-4);
      }
    }
  }

  TEST_CASE("cosine identity on [-1,1]") {
    for (std::size_t r : {2u, 5u, 9u}) {
      for (double x = -1.0; x <= 1.0; x += 0.125) {
        CHECK(chebyshev_value(r, x) ==
              doctest::Approx(std::cos(static_cast<double>(r) * std::acos(x)))
                  .epsilon(1e-10));
      }
    }
  }
}

TEST_SUITE("damping_poly") {
  TEST_CASE("spec instance k=4, eps=0.5") {
    const DampingPoly s = damping_poly(4, 0.5);
    CHECK(s.chebyshev_degree == 2);
    CHECK(s.exponent == 1);
    CHECK(s.value(4) == doctest::Approx(1.0).epsilon(1e-12));
    // s(0) = C_2(0)/C_2(1.25) = -1/2.125.
    CHECK(s.value(0) == doctest::Approx(-1.0 / 2.125).epsilon(1e-12));
    CHECK(std::abs(s.value(0)) <= 0.5);
  }

  TEST_CASE("endpoint is exactly 1 and the integer grid is damped") {
    for (std::size_t k : {1u, 2u, 7u, 16u, 33u, 64u}) {
      for (double eps : {0.1, 0.01}) {
        const DampingPoly s = damping_poly(k, eps);
        CHECK(std::abs(s.value(static_cast<double>(k)) - 1.0) <= 1e-9);
        for (std::size_t j = 0; j < k; ++j) {
          CHECK(std::abs(s.value(static_cast<double>(j))) <= eps);
        }
      }
    }
  }

  TEST_CASE("expansion degree is exactly r*e with a nonzero lead") {
    for (std::size_t k : {1u, 4u, 10u, 64u}) {
      for (double eps : {0.1, 0.01}) {
        const DampingPoly s = damping_poly(k, eps);
        const auto r = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(k))));
        const auto e =
            static_cast<std::size_t>(std::ceil(std::log2(1.0 / eps)));
        CHECK(s.expansion.degree() == r * e);
        CHECK(s.expansion.coefficients.back() != 0.0);
      }
    }
  }

  TEST_CASE("expansion agrees with the closed form at small k") {
    for (std::size_t k : {1u, 2u, 3u, 4u, 6u}) {
      const DampingPoly s = damping_poly(k, 0.1);
      for (std::size_t j = 0; j <= k; ++j) {
        CHECK(s.expansion.eval(static_cast<double>(j)) ==
              doctest::Approx(s.value(static_cast<double>(j)))
                  .epsilon(1e-9));
      }
    }
  }

  TEST_CASE("rejects bad arguments") {
    CHECK_THROWS_AS(damping_poly(0, 0.1), Error);
    CHECK_THROWS_AS(damping_poly(4, 0.0), Error);
    CHECK_THROWS_AS(damping_poly(4, 1.0), Error);
  }
}
