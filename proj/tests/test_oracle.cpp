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

#include "onicescu/catalog.hpp"
#include "onicescu/oracle.hpp"
#include "test_util.hpp"

namespace {

using namespace onicescu;
using oracle::Moment;
using oracle::OracleResult;
using oracle::QuadratureConfig;
using testutil::density;
using testutil::vec;

// Effective tolerance of a converged one-dimensional result.
double tol_of(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

void check_converged_1d(const OracleResult& r, const QuadratureConfig& cfg) {
  CHECK(r.converged);
  CHECK(r.error_estimate <= tol_of(cfg, r.value));
  CHECK(r.evaluations > 0);
}

TEST_CASE("normalization is one for every catalog family") {
  const QuadratureConfig cfg;
  for (const auto& name : family_names()) {
    CAPTURE(name);
    const CatalogEntry entry = make_default_entry(name);
    const Density p(entry.family,
                    entry.family->source(default_source_point(name)));
    const OracleResult r = oracle::normalization(p, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("product integral: exponential pair") {
  const CatalogEntry e = make_exponential();
  const Density p = density(e, {1.0});
  const Density q = density(e, {2.0});
  const QuadratureConfig cfg;
  const OracleResult r = oracle::integrate_product(p, q, cfg);
  check_converged_1d(r, cfg);
  CHECK(std::abs(r.value - 2.0 / 3.0) <= 1e-10);
}

TEST_CASE("product integral: standard normal with itself") {
  const CatalogEntry e = make_normal();
  const Density p = density(e, {0.0, 1.0});
  const OracleResult r = oracle::integrate_product(p, p);
  CHECK(r.converged);
  // 1/(2 sqrt(pi))
  CHECK(r.value == doctest::Approx(0.2820947918).epsilon(1e-9));
  CHECK(r.value ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-11));
}

TEST_CASE("product series: poisson pair") {
  const CatalogEntry e = make_poisson();
  const Density p = density(e, {1.0});
  const OracleResult r = oracle::integrate_product(p, p);
  CHECK(r.converged);
  // e^-2 * sum 1/(i!)^2, summed here independently.
  double series = 0.0;
  for (int i = 24; i >= 0; --i) {
    const double lf = std::lgamma(i + 1.0);
    series += std::exp(-2.0 * lf);
  }
  CHECK(r.value == doctest::Approx(std::exp(-2.0) * series).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(0.3085083225).epsilon(2e-9));
}

TEST_CASE("power product: Bhattacharyya coefficient of two normals") {
  const CatalogEntry e = make_normal();
  const Density p = density(e, {0.0, 1.0});
  const Density q = density(e, {2.0, 1.0});
  const OracleResult r = oracle::integrate_power_product(p, q, 0.5, 0.5);
  CHECK(r.converged);
  // Equal variances: integral of sqrt(p q) = exp(-(mu1-mu2)^2 / 8).
  CHECK(r.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));

  const OracleResult prod = oracle::integrate_product(p, q);
  const OracleResult pow11 = oracle::integrate_power_product(p, q, 1.0, 1.0);
  CHECK(pow11.value ==
        doctest::Approx(prod.value).epsilon(1e-11));
}

TEST_CASE("mixture square: exponential components") {
  const CatalogEntry e = make_exponential();
  const Density p1 = density(e, {1.0});
  const Density p2 = density(e, {2.0});

  const OracleResult mix =
      oracle::integrate_mixture_square({0.5, 0.5}, {p1, p2});
  CHECK(mix.converged);
  // (1/4)(1/2) + (1/4)(1) + (1/2)(2/3)
  CHECK(mix.value == doctest::Approx(0.7083333333).epsilon(1e-9));

  const OracleResult single = oracle::integrate_mixture_square({1.0}, {p1});
  const OracleResult self = oracle::integrate_product(p1, p1);
  CHECK(single.value == doctest::Approx(self.value).epsilon(1e-11));

  const OracleResult degenerate =
      oracle::integrate_mixture_square({1.0, 0.0}, {p1, p2});
  CHECK(degenerate.value == doctest::Approx(self.value).epsilon(1e-11));
}

TEST_CASE("entropy integrals") {
  const CatalogEntry n = make_normal();
  const Density std_normal = density(n, {0.0, 1.0});
  const OracleResult h = oracle::entropy_integral(std_normal);
  CHECK(h.converged);
  CHECK(h.value == doctest::Approx(1.4189385332).epsilon(1e-9));

  const CatalogEntry e = make_exponential();
  const Density p1 = density(e, {1.0});
  const Density p2 = density(e, {2.0});
  // -int p1 log p2 = -log(2) + 2 * E1[x] = 2 - log 2.
  const OracleResult hx = oracle::cross_entropy_integral(p1, p2);
  CHECK(hx.converged);
  CHECK(hx.value ==
        doctest::Approx(2.0 - std::log(2.0)).epsilon(1e-10));

  const OracleResult self_cross = oracle::cross_entropy_integral(p2, p2);
  const OracleResult self_ent = oracle::entropy_integral(p2);
  CHECK(self_cross.value ==
        doctest::Approx(self_ent.value).epsilon(1e-10));
  CHECK(self_ent.value ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-10));

  const CatalogEntry par = make_pareto(1.0);
  const OracleResult hp = oracle::entropy_integral(density(par, {1.0}));
  CHECK(hp.converged);
  CHECK(hp.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("moment expectations") {
  const CatalogEntry n = make_normal();
  const Density std_normal = density(n, {0.0, 1.0});
  const auto stats =
      oracle::moment_expectation(std_normal, Moment::sufficient_stat);
  REQUIRE(stats.size() == 2);
  CHECK(std::abs(stats[0].value) <= 1e-9);        // E[x] = 0
  CHECK(stats[1].value == doctest::Approx(1.0).epsilon(1e-9));  // E[x^2] = 1
  const Vector eta =
      n.family->grad_log_normalizer(std_normal.theta());
  CHECK(std::abs(stats[0].value - eta[0]) <= 1e-9);
  CHECK(stats[1].value == doctest::Approx(eta[1]).epsilon(1e-9));

  const CatalogEntry e = make_exponential();
  const auto t_exp =
      oracle::moment_expectation(density(e, {2.0}), Moment::sufficient_stat);
  REQUIRE(t_exp.size() == 1);
  CHECK(t_exp[0].value == doctest::Approx(-0.5).epsilon(1e-9));  // t = -x

  // Zero-carrier family: E[exp(k)] = 1 and E[k] = 0.
  const auto one =
      oracle::moment_expectation(std_normal, Moment::exp_carrier);
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == doctest::Approx(1.0).epsilon(1e-10));
  const auto zero = oracle::moment_expectation(std_normal, Moment::carrier);
  REQUIRE(zero.size() == 1);
  CHECK(std::abs(zero[0].value) <= 1e-12);

  // Poisson lambda = 1: E[1/x!] = e^-1 sum 1/(i!)^2.
  const CatalogEntry po = make_poisson();
  const auto ek =
      oracle::moment_expectation(density(po, {1.0}), Moment::exp_carrier);
  REQUIRE(ek.size() == 1);
  double series = 0.0;
  for (int i = 24; i >= 0; --i) series += std::exp(-2.0 * std::lgamma(i + 1.0));
  CHECK(ek[0].value ==
        doctest::Approx(std::exp(-1.0) * series).epsilon(1e-12));
  CHECK(std::abs(ek[0].value - 0.8387) <= 5e-4);

  // Poisson lambda = 1: E[-log x!] = -e^-1 sum log(i!)/i!.
  const auto ck =
      oracle::moment_expectation(density(po, {1.0}), Moment::carrier);
  double logfac_series = 0.0;
  for (int i = 24; i >= 2; --i) {
    logfac_series += std::lgamma(i + 1.0) * std::exp(-std::lgamma(i + 1.0));
  }
  CHECK(ck[0].value ==
        doctest::Approx(-std::exp(-1.0) * logfac_series).epsilon(1e-12));
}

TEST_CASE("half-infinite transforms agree") {
  QuadratureConfig log_cfg;
  log_cfg.half_infinite_transform =
      QuadratureConfig::Transform::log_substitution;
  QuadratureConfig rat_cfg;
  rat_cfg.half_infinite_transform = QuadratureConfig::Transform::rational_map;

  const CatalogEntry fams[] = {make_exponential(), make_gamma(),
                               make_lognormal(), make_pareto(2.0)};
  const Vector points[] = {vec({1.0}), vec({2.0, 1.5}), vec({0.0, 1.0}),
                           vec({1.5})};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(fams[i].family->name);
    const Density p = density(fams[i], points[i]);
    const OracleResult a = oracle::integrate_product(p, p, log_cfg);
    const OracleResult b = oracle::integrate_product(p, p, rat_cfg);
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(std::abs(a.value - b.value) <=
          10.0 * (a.error_estimate + b.error_estimate));
  }
}

TEST_CASE("doubling the subdivision budget stays within the error estimate") {
  const CatalogEntry e = make_gamma();
  const Density p = density(e, {0.8, 2.0});
  QuadratureConfig base;
  QuadratureConfig doubled;
  doubled.max_subdivisions = 2 * base.max_subdivisions;
  const OracleResult a = oracle::integrate_product(p, p, base);
  const OracleResult b = oracle::integrate_product(p, p, doubled);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(std::abs(a.value - b.value) <= a.error_estimate + 1e-300);
}

TEST_CASE("starved budget reports NotConverged with a usable estimate") {
  const CatalogEntry e = make_exponential();
  const Density p = density(e, {1.0});
  const Density q = density(e, {2.0});
  QuadratureConfig tight;
  tight.abs_tol = 1e-18;
  tight.rel_tol = 1e-18;
  tight.max_subdivisions = 4;
  const OracleResult r = oracle::integrate_product(p, q, tight);
  CHECK_FALSE(r.converged);
  try {
    oracle::require_converged(r, "product integral");
    FAIL("expected NotConverged");
  } catch (const NotConverged& err) {
    CHECK(std::abs(err.best_estimate - 2.0 / 3.0) <= 1e-4);
    CHECK(err.error_bound > 0.0);
    CHECK(err.best_estimate == r.value);
  }
}

TEST_CASE("starved series cap reports NotConverged") {
  const CatalogEntry po = make_poisson();
  const Density p = density(po, {4.0});
  QuadratureConfig tiny;
  tiny.series_max_terms = 3;
  const OracleResult r = oracle::normalization(p, tiny);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(oracle::require_converged(r, "normalization"),
                  NotConverged);
}

TEST_CASE("converged results satisfy the error contract") {
  const QuadratureConfig cfg;
  const CatalogEntry fams[] = {make_exponential(), make_normal(), make_beta(),
                               make_poisson()};
  const Vector points[] = {vec({0.5}), vec({1.0, 0.5}), vec({2.0, 3.0}),
                           vec({2.0})};
  for (int i = 0; i < 4; ++i) {
    const Density p = density(fams[i], points[i]);
    check_converged_1d(oracle::integrate_product(p, p, cfg), cfg);
    check_converged_1d(oracle::entropy_integral(p, cfg), cfg);
  }
}

TEST_CASE("two-dimensional normal integrals") {
  const CatalogEntry e = make_mvn(2);
  const Density p =
      density(e, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0});  // mean 0, identity
  const OracleResult norm = oracle::normalization(p);
  CHECK(norm.converged);
  CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-7));

  const OracleResult sq = oracle::integrate_product(p, p);
  CHECK(sq.converged);
  CHECK(sq.value == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-7));

  const OracleResult h = oracle::entropy_integral(p);
  CHECK(h.converged);
  CHECK(h.value ==
        doctest::Approx(1.0 + std::log(2.0 * M_PI)).epsilon(1e-7));
}

}  // namespace
