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

#include "privrel/poly.hpp"

#include <cmath>

#include "privrel/error.hpp"

namespace privrel {

double UnivariatePoly::eval(double x) const {
  double acc = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    acc = acc * x + coefficients[i];
  }
  return acc;
}

void UnivariatePoly::strip_trailing_zeros() {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) {
    coefficients.pop_back();
  }
}

UnivariatePoly UnivariatePoly::multiply(const UnivariatePoly& a,
                                        const UnivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return UnivariatePoly{};
  UnivariatePoly out;
  out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1,
                          0.0);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
      out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
    }
  }
  out.strip_trailing_zeros();
  return out;
}

UnivariatePoly UnivariatePoly::compose_scaled(const UnivariatePoly& p,
                                              double scale) {
  UnivariatePoly out = p;
  double factor = 1;
  for (std::size_t i = 0; i < out.coefficients.size(); ++i) {
    out.coefficients[i] *= factor;
    factor *= scale;
  }
  out.strip_trailing_zeros();
  return out;
}

UnivariatePoly chebyshev(std::size_t r) {
  UnivariatePoly prev;
  prev.coefficients = {1.0};
  if (r == 0) return prev;
  UnivariatePoly curr;
  curr.coefficients = {0.0, 1.0};
  for (std::size_t i = 1; i < r; ++i) {
    UnivariatePoly next;
    next.coefficients.assign(curr.coefficients.size() + 1, 0.0);
    for (std::size_t j = 0; j < curr.coefficients.size(); ++j) {
      next.coefficients[j + 1] += 2.0 * curr.coefficients[j];
    }
    for (std::size_t j = 0; j < prev.coefficients.size(); ++j) {
      next.coefficients[j] -= prev.coefficients[j];
    }
    prev = std::move(curr);
    curr = std::move(next);
  }
  return curr;
}

double chebyshev_value(std::size_t r, double x) {
  double prev = 1.0;
  if (r == 0) return prev;
  double curr = x;
  for (std::size_t i = 1; i < r; ++i) {
    const double next = 2.0 * x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double DampingPoly::value(double j) const {
  const double kk = static_cast<double>(k);
  const double stretch = 1.0 + 1.0 / kk;
  const double numerator = chebyshev_value(chebyshev_degree, (j / kk) * stretch);
  const double denominator = chebyshev_value(chebyshev_degree, stretch);
  const double ratio = numerator / denominator;
  double out = 1.0;
  for (std::size_t i = 0; i < exponent; ++i) out *= ratio;
  return out;
}

DampingPoly damping_poly(std::size_t k, double eps) {
  if (k < 1) {
    fail(ErrorCode::kInvalidArgument, "damping polynomial requires k >= 1");
  }
  if (!(eps > 0) || !(eps < 1)) {
    fail(ErrorCode::kInvalidArgument, "damping eps must lie in (0,1)");
  }
  DampingPoly s;
  s.k = k;
  s.eps = eps;
  s.chebyshev_degree = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(k)) - 1e-12));
  s.exponent =
      static_cast<std::size_t>(std::ceil(std::log2(1.0 / eps) - 1e-12));
  if (s.exponent == 0) s.exponent = 1;

  const double kk = static_cast<double>(k);
  const double stretch = 1.0 + 1.0 / kk;
  const UnivariatePoly base = UnivariatePoly::compose_scaled(
      chebyshev(s.chebyshev_degree), stretch / kk);
  const double denominator = chebyshev_value(s.chebyshev_degree, stretch);

  UnivariatePoly normalized = base;
  for (double& c : normalized.coefficients) c /= denominator;

  UnivariatePoly power;
  power.coefficients = {1.0};
  for (std::size_t i = 0; i < s.exponent; ++i) {
    power = UnivariatePoly::multiply(power, normalized);
  }
  s.expansion = std::move(power);
  return s;
}

}  // namespace privrel
