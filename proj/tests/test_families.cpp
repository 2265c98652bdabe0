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
#include "onicescu/measures.hpp"
#include "onicescu/oracle.hpp"
#include "test_util.hpp"

namespace {

using namespace onicescu;
using testutil::close_rel;
using testutil::density;
using testutil::vec;

// Every check a family must pass on every documented grid point:
// unit normalization by quadrature, the gradient of the log-normalizer
// against finite differences and against the oracle moment of t(x), and the
// closed-form energy and entropy against both the generic route and the
// brute-force integrals.
void sweep_family(const std::string& name) {
  const CatalogEntry entry = make_default_entry(name);
  const CheckConfig checks;
  for (const Vector& s : default_source_grid(name)) {
    CAPTURE(name);
    CAPTURE(s.transpose());
    const Density p = density(entry, s);

    const double total =
        oracle::require_converged(oracle::normalization(p), "normalization");
    CHECK(std::abs(total - 1.0) <= checks.normalization_rtol);

    const Vector grad = entry.family->grad_log_normalizer(p.theta());
    const Vector fd = finite_difference_gradient(
        entry.family->log_normalizer, p.theta(), checks.fd_step_scale);
    for (int i = 0; i < grad.size(); ++i) {
      CHECK(std::abs(grad[i] - fd[i]) <=
            checks.grad_rtol * std::max(1.0, std::abs(grad[i])));
    }

    const auto moments =
        oracle::moment_expectation(p, oracle::Moment::sufficient_stat);
    REQUIRE(static_cast<int>(moments.size()) == grad.size());
    for (int i = 0; i < grad.size(); ++i) {
      CHECK(std::abs(moments[i].value - grad[i]) <=
            checks.mean_identity_rtol * std::max(1.0, std::abs(grad[i])));
    }

    const double closed_energy = entry.closed_form_energy(s);
    const double generic_energy = energy(p).value;
    CHECK(close_rel(closed_energy, generic_energy,
                    checks.closed_vs_generic_rtol));
    const double oracle_energy = oracle::require_converged(
        oracle::integrate_product(p, p), "energy integral");
    CHECK(close_rel(closed_energy, oracle_energy, 1e-7));

    const double closed_entropy = entry.closed_form_entropy(s);
    const double generic_entropy = shannon_entropy(p).value;
    CHECK(std::abs(closed_entropy - generic_entropy) <=
          checks.closed_vs_generic_rtol * std::max(1.0, std::abs(closed_entropy)));
    const double oracle_entropy = oracle::require_converged(
        oracle::entropy_integral(p), "entropy integral");
    CHECK(std::abs(closed_entropy - oracle_entropy) <=
          checks.entropy_oracle_rtol * std::max(1.0, std::abs(closed_entropy)));
  }

  // Cross energies between consecutive grid points, against quadrature.
  const auto grid = default_source_grid(name);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const Density p = density(entry, grid[i]);
    const Density q = density(entry, grid[i + 1]);
    const double closed = cross_energy(p, q).value;
    const double brute = oracle::require_converged(
        oracle::integrate_product(p, q), "cross energy integral");
    CHECK(close_rel(closed, brute, 1e-7));
  }

  // One two-component mixture per family, against quadrature of m^2.
  const Density p = density(entry, grid[0]);
  const Density q = density(entry, grid[1]);
  const double closed_mix = mixture_energy(Mixture({0.3, 0.7}, {p, q})).value;
  const double brute_mix = oracle::require_converged(
      oracle::integrate_mixture_square({0.3, 0.7}, {p, q}), "mixture square");
  CHECK(close_rel(closed_mix, brute_mix, 1e-7));
}

TEST_CASE("grid sweep: exponential") { sweep_family("exponential"); }
TEST_CASE("grid sweep: normal") { sweep_family("normal"); }
TEST_CASE("grid sweep: mvn") { sweep_family("mvn"); }
TEST_CASE("grid sweep: lognormal") { sweep_family("lognormal"); }
TEST_CASE("grid sweep: pareto") { sweep_family("pareto"); }
TEST_CASE("grid sweep: gamma") { sweep_family("gamma"); }
TEST_CASE("grid sweep: beta") { sweep_family("beta"); }
TEST_CASE("grid sweep: poisson") { sweep_family("poisson"); }

TEST_CASE("exponential anchors") {
  const CatalogEntry e = make_exponential();
  CHECK(e.closed_form_energy(vec({2.0})) == 1.0);  // lambda / 2
  CHECK(e.closed_form_energy(vec({5.0})) == doctest::Approx(2.5));
  CHECK(e.closed_form_entropy(vec({1.0})) == 1.0);  // 1 - log lambda at 1
  CHECK(e.closed_form_entropy(vec({2.0})) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("normal anchors") {
  const CatalogEntry n = make_normal();
  CHECK(n.closed_form_energy(vec({0.0, 1.0})) ==
        doctest::Approx(0.2820947918).epsilon(1e-10));
  CHECK(n.closed_form_entropy(vec({0.0, 1.0})) ==
        doctest::Approx(1.4189385332).epsilon(1e-10));
  // Energy does not depend on the mean.
  CHECK(n.closed_form_energy(vec({17.0, 1.0})) ==
        n.closed_form_energy(vec({0.0, 1.0})));
}

TEST_CASE("mvn anchors and one-dimensional reduction") {
  const CatalogEntry m2 = make_mvn(2);
  CHECK(m2.closed_form_energy(vec({0.0, 0.0, 1.0, 0.0, 0.0, 1.0})) ==
        doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
  CHECK(m2.closed_form_entropy(vec({0.0, 0.0, 1.0, 0.0, 0.0, 1.0})) ==
        doctest::Approx(1.0 + std::log(2.0 * M_PI)).epsilon(1e-12));

  // General direct form 1 / (2^d pi^{d/2} sqrt(det Sigma)).
  const Vector s = vec({1.0, -1.0, 2.0, 0.5, 0.5, 1.0});
  const double det = 2.0 * 1.0 - 0.5 * 0.5;
  CHECK(m2.closed_form_energy(s) ==
        doctest::Approx(1.0 / (4.0 * M_PI * std::sqrt(det))).epsilon(1e-12));

  // d = 1 collapses to the univariate normal in (mu, sigma^2) coordinates.
  const CatalogEntry m1 = make_mvn(1);
  const CatalogEntry n = make_normal();
  for (double sigma : {0.5, 1.0, 2.0}) {
    const Vector uni = vec({0.7, sigma});
    const Vector red = vec({0.7, sigma * sigma});
    CHECK(m1.closed_form_energy(red) ==
          doctest::Approx(n.closed_form_energy(uni)).epsilon(1e-12));
    CHECK(m1.closed_form_entropy(red) ==
          doctest::Approx(n.closed_form_entropy(uni)).epsilon(1e-12));
  }
  const Density p1(m1.family, m1.family->source(vec({0.0, 1.0})));
  const Density q1(m1.family, m1.family->source(vec({2.0, 1.0})));
  const CatalogEntry nn = make_normal();
  const Density pn(nn.family, nn.family->source(vec({0.0, 1.0})));
  const Density qn(nn.family, nn.family->source(vec({2.0, 1.0})));
  CHECK(cross_energy(p1, q1).value ==
        doctest::Approx(cross_energy(pn, qn).value).epsilon(1e-12));
  CHECK(cauchy_schwarz(p1, q1).value ==
        doctest::Approx(cauchy_schwarz(pn, qn).value).epsilon(1e-12));
}

TEST_CASE("lognormal anchors") {
  const CatalogEntry ln = make_lognormal();
  // exp(sigma^2/4 - mu) / (2 sigma sqrt(pi)) at (0,1).
  CHECK(ln.closed_form_energy(vec({0.0, 1.0})) ==
        doctest::Approx(0.3622168826).epsilon(1e-9));
  CHECK(ln.closed_form_energy(vec({0.0, 1.0})) ==
        doctest::Approx(std::exp(0.25) / (2.0 * std::sqrt(M_PI)))
            .epsilon(1e-13));
  // At mu = sigma^2/4 the energy equals the normal energy with the same sigma.
  const CatalogEntry n = make_normal();
  for (double sigma : {0.5, 1.0, 1.5}) {
    CHECK(ln.closed_form_energy(vec({sigma * sigma / 4.0, sigma})) ==
          doctest::Approx(n.closed_form_energy(vec({0.0, sigma})))
              .epsilon(1e-13));
  }
  // H = mu + (1/2) log(2 pi e sigma^2).
  CHECK(ln.closed_form_entropy(vec({1.0, 0.5})) ==
        doctest::Approx(1.0 + 0.5 * std::log(2.0 * M_PI * M_E * 0.25))
            .epsilon(1e-13));
}

TEST_CASE("pareto anchors") {
  const CatalogEntry k1 = make_pareto(1.0);
  CHECK(k1.closed_form_energy(vec({1.0})) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(k1.closed_form_entropy(vec({1.0})) == doctest::Approx(2.0));

  const CatalogEntry k2 = make_pareto(2.0);
  CHECK(k2.closed_form_energy(vec({1.0})) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(k1.family->tag != k2.family->tag);

  const Density p(k1.family, k1.family->source(vec({2.5})));
  const double brute = oracle::require_converged(
      oracle::integrate_product(p, p), "pareto energy integral");
  CHECK(close_rel(k1.closed_form_energy(vec({2.5})), brute, 1e-7));
}

TEST_CASE("gamma anchors and undefined energy") {
  const CatalogEntry g = make_gamma();
  // alpha = 1 reduces to Exponential(rate 1/beta): I = 1/(2 beta).
  CHECK(g.closed_form_energy(vec({1.0, 1.0})) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(g.closed_form_energy(vec({1.0, 2.0})) ==
        doctest::Approx(0.25).epsilon(1e-13));
  CHECK(g.closed_form_energy(vec({2.0, 1.0})) ==
        doctest::Approx(0.25).epsilon(1e-13));

  CHECK_THROWS_AS(g.closed_form_energy(vec({0.5, 1.0})), EnergyUndefined);
  CHECK_THROWS_AS(g.closed_form_energy(vec({0.3, 1.0})), EnergyUndefined);
  const Density half(g.family, g.family->source(vec({0.5, 1.0})));
  CHECK_THROWS_AS(energy(half), DomainViolation);
  // Entropy stays defined below the energy threshold.
  const double brute = oracle::require_converged(
      oracle::entropy_integral(half), "gamma entropy integral");
  CHECK(std::abs(g.closed_form_entropy(vec({0.5, 1.0})) - brute) <= 1e-6);
}

TEST_CASE("beta anchors, lower bound, and the printed-table literal") {
  const CatalogEntry b = make_beta();
  CHECK(b.closed_form_energy(vec({1.0, 1.0})) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.closed_form_energy(vec({2.0, 2.0})) ==
        doctest::Approx(1.2).epsilon(1e-12));

  // On the unit interval the energy is bounded below by 1.
  for (const Vector& s : default_source_grid("beta")) {
    CHECK(b.closed_form_energy(s) >= 1.0 - 1e-12);
  }

  CHECK_THROWS_AS(b.closed_form_energy(vec({0.5, 2.0})), EnergyUndefined);
  CHECK_THROWS_AS(b.closed_form_energy(vec({2.0, 0.4})), EnergyUndefined);
  const Density edge(b.family, b.family->source(vec({0.5, 2.0})));
  CHECK_THROWS_AS(energy(edge), DomainViolation);

  // The widely printed alternative expression disagrees with brute force at
  // (2,2): it yields 1/1080 where quadrature (and the implemented form) give
  // 6/5. Both versions agree at (1,1).
  const double literal = beta_energy_table_literal(2.0, 2.0);
  CHECK(literal == doctest::Approx(1.0 / 1080.0).epsilon(1e-9));
  const Density b22(b.family, b.family->source(vec({2.0, 2.0})));
  const double brute = oracle::require_converged(
      oracle::integrate_product(b22, b22), "beta energy integral");
  CHECK(brute == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(std::abs(literal - brute) > 1.0);  // three orders of magnitude apart
  CHECK(close_rel(b.closed_form_energy(vec({2.0, 2.0})), brute, 1e-9));
  CHECK(beta_energy_table_literal(1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("beta energy near the validity edge") {
  // 1/2 < alpha < 1 keeps the squared density integrable despite the
  // endpoint blow-up; quadrature must still match.
  const CatalogEntry b = make_beta();
  const Vector s = vec({0.8, 0.9});
  const Density p(b.family, b.family->source(s));
  const double brute = oracle::require_converged(
      oracle::integrate_product(p, p), "beta edge energy");
  CHECK(close_rel(b.closed_form_energy(s), brute, 1e-7));
}

TEST_CASE("poisson anchors") {
  const CatalogEntry po = make_poisson();
  CHECK(po.closed_form_energy(vec({1.0})) ==
        doctest::Approx(0.3085083225).epsilon(2e-9));

  // Degenerate limit: only x = 0 carries mass, so E[1/x!] -> 1.
  const Vector theta_tiny =
      po.family->to_natural(po.family->source(vec({1e-8}))).coords;
  CHECK(std::abs(po.family->carrier_expectation(theta_tiny) - 1.0) <= 1e-6);

  // Closed-form energy equals the generic route
  // e^{lambda^2 - 2 lambda} E_{Poisson(lambda^2)}[1/x!].
  for (double lambda : {0.5, 1.0, 2.0}) {
    const Vector theta_sq =
        po.family->to_natural(po.family->source(vec({lambda * lambda})))
            .coords;
    const double generic = std::exp(lambda * lambda - 2.0 * lambda) *
                           po.family->carrier_expectation(theta_sq);
    CHECK(close_rel(po.closed_form_energy(vec({lambda})), generic, 1e-10));
  }

  // Discrete entropy: lambda (1 - log lambda) + e^-lambda sum lambda^i log(i!)/i! .
  double series = 0.0;
  for (int i = 30; i >= 2; --i) {
    series += std::lgamma(i + 1.0) *
              std::exp(i * std::log(2.0) - std::lgamma(i + 1.0));
  }
  const double h2 = 2.0 * (1.0 - std::log(2.0)) + std::exp(-2.0) * series;
  CHECK(po.closed_form_entropy(vec({2.0})) ==
        doctest::Approx(h2).epsilon(1e-12));
}

}  // namespace
