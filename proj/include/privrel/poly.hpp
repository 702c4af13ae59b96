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

#ifndef PRIVREL_POLY_HPP
#define PRIVREL_POLY_HPP

#include <cstddef>
#include <vector>

namespace privrel {

// Real univariate polynomial, coefficients in ascending degree. The
// trailing coefficient is nonzero unless the polynomial is zero (stored as
// the single coefficient 0).
struct UnivariatePoly {
  std::vector<double> coefficients{0.0};

  std::size_t degree() const {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }
  bool is_zero() const {
    return coefficients.size() == 1 && coefficients[0] == 0.0;
  }

  // Horner evaluation. Accurate for well-conditioned inputs; see
  // DampingPoly::value for the stable path used on damping polynomials.
  double eval(double x) const;

  void strip_trailing_zeros();

  static UnivariatePoly multiply(const UnivariatePoly& a,
                                 const UnivariatePoly& b);
  // p(scale * x).
  static UnivariatePoly compose_scaled(const UnivariatePoly& p, double scale);
};

// Chebyshev polynomial of the first kind, via the coefficient recurrence
// C_0 = 1, C_1 = x, C_{r+1} = 2x*C_r - C_{r-1}.
UnivariatePoly chebyshev(std::size_t r);

// C_r(x) by the value recurrence; exact at x = 1 and numerically stable
// for the argument ranges used here.
double chebyshev_value(std::size_t r, double x);

// Damping polynomial: s(j) = (C_r((j/k)(1+1/k)) / C_r(1+1/k))^e with
// r = ceil(sqrt(k)) and e = ceil(log2(1/eps)), so s(k) = 1 and |s(j)| <= eps
// on integers 0 <= j < k. The expansion carries the explicit power-basis
// coefficients (degree r*e exactly); value() evaluates through the closed
// form because Horner on the expansion cancels catastrophically for large k.
struct DampingPoly {
  std::size_t k = 0;
  double eps = 0;
  std::size_t chebyshev_degree = 0;  // r
  std::size_t exponent = 0;          // e
  UnivariatePoly expansion;

  double value(double j) const;
};

DampingPoly damping_poly(std::size_t k, double eps);

}  // namespace privrel

#endif  // PRIVREL_POLY_HPP
