// Copyright 2026 The onicescu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "onicescu/special.hpp"

#include <cmath>
#include <stdexcept>

namespace onicescu::special {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

// Recurrence lift to x >= 6, then the asymptotic expansion
//   psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k}).
// Relative accuracy ~1e-14 on (0, inf).
double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
  double r = 0.0;
  while (x < 6.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli coefficients B_2/2, B_4/4, ... as 1/12, -1/120, 1/252, ...
  double series = inv2 * (1.0 / 12.0 -
                  inv2 * (1.0 / 120.0 -
                  inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 -
                  inv2 * (1.0 / 132.0 -
                  inv2 * (691.0 / 32760.0 -
                  inv2 * (1.0 / 12.0)))))));
  return r + std::log(x) - 0.5 * inv - series;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_beta: requires a > 0 and b > 0");
  }
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

}  // namespace onicescu::special
