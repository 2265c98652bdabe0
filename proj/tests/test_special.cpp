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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "onicescu/special.hpp"

namespace {

using onicescu::special::digamma;
using onicescu::special::log_beta;
using onicescu::special::log_gamma;

constexpr double kEulerGamma = 0.5772156649015328606;

TEST_CASE("log_gamma matches factorials") {
  double log_factorial = 0.0;  // log(0!) = 0
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) log_factorial += std::log(static_cast<double>(n));
    const double got = log_gamma(static_cast<double>(n + 1));
    if (n <= 1) {
      CHECK(std::abs(got) <= 1e-14);
    } else {
      CHECK(got == doctest::Approx(log_factorial).epsilon(1e-13));
    }
  }
}

TEST_CASE("log_gamma known values") {
  // Gamma(1/2) = sqrt(pi).
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  // Gamma(3/2) = sqrt(pi)/2.
  CHECK(log_gamma(1.5) ==
        doctest::Approx(0.5 * std::log(M_PI) - std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("log_gamma duplication identity") {
  // log Gamma(2z) = (2z-1) log 2 - (1/2) log pi + log Gamma(z)
  //               + log Gamma(z + 1/2).
  for (int i = 1; i <= 20; ++i) {
    const double z = 0.3 * i;  // 0.3 .. 6.0
    const double lhs = log_gamma(2.0 * z);
    const double rhs = (2.0 * z - 1.0) * std::log(2.0) -
                       0.5 * std::log(M_PI) + log_gamma(z) +
                       log_gamma(z + 0.5);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("log_gamma domain") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_beta known values and symmetry") {
  CHECK(std::abs(log_beta(1.0, 1.0)) <= 1e-14);  // B(1,1) = 1
  CHECK(log_beta(2.0, 2.0) ==
        doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-13));
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-13));
  const double pts[] = {0.3, 0.75, 1.0, 2.5, 4.0, 11.0};
  for (double a : pts) {
    for (double b : pts) {
      CHECK(log_beta(a, b) == log_beta(b, a));  // same call graph both ways
      // Direct Gamma-function route at moderate arguments.
      const double direct =
          std::log(std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b));
      CHECK(log_beta(a, b) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(log_beta(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(log_beta(1.0, 0.0), std::domain_error);
}

TEST_CASE("digamma known values") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
  CHECK(digamma(0.5) ==
        doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-12));
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-2.0), std::domain_error);
}

TEST_CASE("digamma recurrence") {
  // psi(x+1) = psi(x) + 1/x.
  for (double x : {0.1, 0.37, 0.9, 1.5, 3.25, 7.0, 20.0}) {
    CHECK(digamma(x + 1.0) ==
          doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-12));
  }
}

TEST_CASE("digamma is the derivative of log_gamma") {
  for (double x : {0.6, 1.0, 1.7, 2.5, 4.0, 9.0, 25.0}) {
    const double h = 1e-6 * std::max(1.0, x);
    const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
    CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

}  // namespace
