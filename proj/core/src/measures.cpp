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

#include "onicescu/measures.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace onicescu {

namespace {

// Doubled and summed parameters, validated against the natural domain.
NaturalParam doubled(const Density& p, const char* what) {
  return combine(p.family(), {p.natural()}, {2.0}, what);
}

NaturalParam summed(const Density& p, const Density& q, const char* what) {
  return combine(p.family(), {p.natural(), q.natural()}, {1.0, 1.0}, what);
}

void require_zero_carrier(const FamilyDescriptor& fam, const char* what) {
  if (!fam.has_zero_carrier) {
    throw CarrierNotZero(std::string(what) +
                         ": evaluation route requires a zero carrier, " +
                         fam.tag + " has k(x) != 0");
  }
}

void require_in_support(const FamilyDescriptor& fam, const Vector& omega,
                        const char* what) {
  if (!fam.support.contains(omega)) {
    throw std::invalid_argument(std::string(what) +
                                ": omega is not a support point of " +
                                fam.tag);
  }
}

// log p_theta(omega) for raw natural coordinates already known to lie in the
// natural domain.
double log_density_at(const FamilyDescriptor& fam, const Vector& theta,
                      const Vector& omega) {
  return fam.log_density(theta, omega);
}

bool natural_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Canonical (lexicographic) argument order, so symmetric measures are
// bit-exact under argument swaps.
std::pair<const Density*, const Density*> ordered(const Density& p,
                                                  const Density& q) {
  if (natural_less(q.theta(), p.theta())) return {&q, &p};
  return {&p, &q};
}

}  // namespace

// ---------------------------------------------------------------------------
// Mixture.
// ---------------------------------------------------------------------------

Mixture::Mixture(std::vector<double> weights, std::vector<Density> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (weights_.empty() || weights_.size() != components_.size()) {
    throw std::invalid_argument(
        "Mixture: weights and components must be equal-length and non-empty");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw InvalidSourceParam("Mixture: weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidSourceParam("Mixture: weights must sum to 1");
  }
  for (size_t i = 1; i < components_.size(); ++i) {
    require_same_family(components_[0], components_[i], "Mixture");
  }
}

// ---------------------------------------------------------------------------
// Energies.
// ---------------------------------------------------------------------------

double log_energy(const Density& p) {
  const FamilyDescriptor& fam = p.family();
  const NaturalParam two = doubled(p, "energy");
  const double F1 = fam.log_normalizer(p.theta());
  const double F2 = fam.log_normalizer(two.coords);
  return F2 - 2.0 * F1 + std::log(fam.carrier_expectation(two.coords));
}

double log_cross_energy(const Density& p, const Density& q) {
  require_same_family(p, q, "cross_energy");
  const auto [a, b] = ordered(p, q);
  const FamilyDescriptor& fam = a->family();
  const NaturalParam sum = summed(*a, *b, "cross_energy");
  const double F1 = fam.log_normalizer(a->theta());
  const double F2 = fam.log_normalizer(b->theta());
  const double F12 = fam.log_normalizer(sum.coords);
  return F12 - F1 - F2 + std::log(fam.carrier_expectation(sum.coords));
}

MeasureReport energy(const Density& p) {
  MeasureReport r;
  r.value = std::exp(log_energy(p));
  r.method = Method::closed_form;
  return r;
}

MeasureReport cross_energy(const Density& p, const Density& q) {
  MeasureReport r;
  r.value = std::exp(log_cross_energy(p, q));
  r.method = Method::closed_form;
  return r;
}

// ---------------------------------------------------------------------------
// Correlation, Cauchy-Schwarz, Jensen gap.
// ---------------------------------------------------------------------------

namespace {

// D_CS(p,q) = J_F(2 theta1 : 2 theta2)
//           + (log E1 + log E2)/2 - log E12,
// with E1, E2, E12 the carrier expectations at 2 theta1, 2 theta2,
// theta1 + theta2. Written symmetrically in (p, q) so argument order cannot
// change the result. rho = exp(-D_CS); D_CS(p,p) = 0 exactly.
double cauchy_schwarz_value(const Density& p0, const Density& q0) {
  require_same_family(p0, q0, "cauchy_schwarz");
  const auto [pp, qq] = ordered(p0, q0);
  const Density& p = *pp;
  const Density& q = *qq;
  const FamilyDescriptor& fam = p.family();
  const NaturalParam two_p = doubled(p, "cauchy_schwarz");
  const NaturalParam two_q = doubled(q, "cauchy_schwarz");
  const NaturalParam sum = summed(p, q, "cauchy_schwarz");

  const double jensen = 0.5 * fam.log_normalizer(two_p.coords) +
                        0.5 * fam.log_normalizer(two_q.coords) -
                        fam.log_normalizer(sum.coords);
  const double log_e1 = std::log(fam.carrier_expectation(two_p.coords));
  const double log_e2 = std::log(fam.carrier_expectation(two_q.coords));
  const double log_e12 = std::log(fam.carrier_expectation(sum.coords));
  return jensen + 0.5 * log_e1 + 0.5 * log_e2 - log_e12;
}

}  // namespace

MeasureReport correlation(const Density& p, const Density& q) {
  MeasureReport r;
  r.value = std::exp(-cauchy_schwarz_value(p, q));
  r.method = Method::closed_form;
  return r;
}

MeasureReport cauchy_schwarz(const Density& p, const Density& q) {
  MeasureReport r;
  r.value = cauchy_schwarz_value(p, q);
  r.method = Method::closed_form;
  return r;
}

double jensen_F(const FamilyDescriptor& family, const NaturalParam& theta1,
                const NaturalParam& theta2) {
  const NaturalParam mid =
      combine(family, {theta1, theta2}, {0.5, 0.5}, "jensen_F");
  return 0.5 * family.log_normalizer(theta1.coords) +
         0.5 * family.log_normalizer(theta2.coords) -
         family.log_normalizer(mid.coords);
}

// ---------------------------------------------------------------------------
// Hoelder divergence.
// ---------------------------------------------------------------------------

namespace {

struct HolderParts {
  double beta;
  NaturalParam scaled_p;  // gamma * theta1
  NaturalParam scaled_q;  // gamma * theta2
  NaturalParam blend;     // (gamma/alpha) theta1 + (gamma/beta) theta2
};

HolderParts holder_parts(const Density& p, const Density& q, double alpha,
                         double gamma) {
  require_same_family(p, q, "holder");
  require_zero_carrier(p.family(), "holder");
  if (!(alpha > 1.0)) {
    throw std::invalid_argument(
        "holder: alpha must exceed 1 so the conjugate exponent is positive");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("holder: gamma must be positive");
  }
  HolderParts parts;
  parts.beta = alpha / (alpha - 1.0);
  const FamilyDescriptor& fam = p.family();
  parts.scaled_p = combine(fam, {p.natural()}, {gamma}, "holder");
  parts.scaled_q = combine(fam, {q.natural()}, {gamma}, "holder");
  parts.blend = combine(fam, {p.natural(), q.natural()},
                        {gamma / alpha, gamma / parts.beta}, "holder");
  return parts;
}

}  // namespace

double holder_F_form(const Density& p, const Density& q, double alpha,
                     double gamma) {
  const HolderParts parts = holder_parts(p, q, alpha, gamma);
  const FamilyDescriptor& fam = p.family();
  return -fam.log_normalizer(parts.blend.coords) +
         fam.log_normalizer(parts.scaled_p.coords) / alpha +
         fam.log_normalizer(parts.scaled_q.coords) / parts.beta;
}

double holder_omega(const Density& p, const Density& q, double alpha,
                    double gamma, const Vector& omega) {
  const HolderParts parts = holder_parts(p, q, alpha, gamma);
  const FamilyDescriptor& fam = p.family();
  require_in_support(fam, omega, "holder");
  return log_density_at(fam, parts.blend.coords, omega) -
         log_density_at(fam, parts.scaled_p.coords, omega) / alpha -
         log_density_at(fam, parts.scaled_q.coords, omega) / parts.beta;
}

// Primary value comes from the omega-trick log-likelihood form; the
// log-normalizer form of the same quantity is evaluated as an internal
// cross-check (the two differ only by rounding).
MeasureReport holder(const Density& p, const Density& q, double alpha,
                     double gamma) {
  const Vector& omega = p.family().omega_points.front();
  const double o_form = holder_omega(p, q, alpha, gamma, omega);
  const double f_form = holder_F_form(p, q, alpha, gamma);
  const double delta = std::abs(f_form - o_form);
  if (delta > 1e-9 * std::max(1.0, std::abs(f_form))) {
    std::ostringstream msg;
    msg << "holder: internal route disagreement (F-form " << f_form
        << ", omega-form " << o_form << ")";
    throw Error(msg.str());
  }
  MeasureReport r;
  r.value = o_form;
  r.method = Method::omega_trick;
  std::ostringstream notes;
  notes << "omega (" << omega.transpose() << "); log-normalizer route delta "
        << delta;
  r.notes = notes.str();
  return r;
}

// ---------------------------------------------------------------------------
// Omega-trick routes.
// ---------------------------------------------------------------------------

double energy_omega(const Density& p, const Vector& omega) {
  const FamilyDescriptor& fam = p.family();
  require_zero_carrier(fam, "energy_omega");
  require_in_support(fam, omega, "energy_omega");
  const NaturalParam two = doubled(p, "energy_omega");
  return std::exp(2.0 * p.log_density(omega) -
                  log_density_at(fam, two.coords, omega));
}

double cross_energy_omega(const Density& p, const Density& q,
                          const Vector& omega) {
  require_same_family(p, q, "cross_energy_omega");
  const FamilyDescriptor& fam = p.family();
  require_zero_carrier(fam, "cross_energy_omega");
  require_in_support(fam, omega, "cross_energy_omega");
  const NaturalParam sum = summed(p, q, "cross_energy_omega");
  return std::exp(p.log_density(omega) + q.log_density(omega) -
                  log_density_at(fam, sum.coords, omega));
}

double cauchy_schwarz_omega(const Density& p, const Density& q,
                            const Vector& omega) {
  require_same_family(p, q, "cauchy_schwarz_omega");
  const FamilyDescriptor& fam = p.family();
  require_zero_carrier(fam, "cauchy_schwarz_omega");
  require_in_support(fam, omega, "cauchy_schwarz_omega");
  const NaturalParam two_p = doubled(p, "cauchy_schwarz_omega");
  const NaturalParam two_q = doubled(q, "cauchy_schwarz_omega");
  const NaturalParam sum = summed(p, q, "cauchy_schwarz_omega");
  return log_density_at(fam, sum.coords, omega) -
         0.5 * log_density_at(fam, two_p.coords, omega) -
         0.5 * log_density_at(fam, two_q.coords, omega);
}

double correlation_omega(const Density& p, const Density& q,
                         const Vector& omega) {
  return std::exp(-cauchy_schwarz_omega(p, q, omega));
}

// ---------------------------------------------------------------------------
// Entropies.
// ---------------------------------------------------------------------------

MeasureReport shannon_entropy(const Density& p) {
  const FamilyDescriptor& fam = p.family();
  const Vector& theta = p.theta();
  const Vector eta = fam.grad_log_normalizer(theta);
  MeasureReport r;
  r.value = fam.log_normalizer(theta) - theta.dot(eta) -
            fam.carrier_entropy_term(theta);
  r.method = Method::closed_form;
  return r;
}

double entropy_via_conjugate(const Density& p) {
  const FamilyDescriptor& fam = p.family();
  const Vector& theta = p.theta();
  const Vector eta = fam.grad_log_normalizer(theta);
  const double conjugate = theta.dot(eta) - fam.log_normalizer(theta);
  return -conjugate - fam.carrier_entropy_term(theta);
}

double renyi2(const Density& p) { return -log_energy(p); }

double vajda2(const Density& p) { return 1.0 - std::exp(log_energy(p)); }

// ---------------------------------------------------------------------------
// Jensen divergence, mixture energy, bounds.
// ---------------------------------------------------------------------------

MeasureReport energy_jensen_divergence(const Density& p, const Density& q) {
  require_same_family(p, q, "energy_jensen_divergence");
  const double ip = std::exp(log_energy(p));
  const double iq = std::exp(log_energy(q));
  const double ipq = std::exp(log_cross_energy(p, q));
  MeasureReport r;
  r.value = 0.25 * (ip + iq - 2.0 * ipq);
  r.method = Method::closed_form;
  return r;
}

MeasureReport mixture_energy(const Mixture& m) {
  const std::vector<double>& w = m.weights();
  const std::vector<Density>& comp = m.components();
  double total = 0.0;
  for (size_t i = 0; i < comp.size(); ++i) {
    for (size_t j = i; j < comp.size(); ++j) {
      double cross;
      try {
        cross = std::exp(log_cross_energy(comp[i], comp[j]));
      } catch (const DomainViolation&) {
        std::ostringstream msg;
        msg << "mixture_energy: cross energy of components " << i << " and "
            << j << " undefined";
        throw DomainViolation(msg.str());
      }
      total += (i == j ? 1.0 : 2.0) * w[i] * w[j] * cross;
    }
  }
  MeasureReport r;
  r.value = total;
  r.method = Method::closed_form;
  return r;
}

BoundReport bound_checks(const Density& p, const Density& q,
                         const oracle::QuadratureConfig& cfg) {
  require_same_family(p, q, "bound_checks");
  BoundReport b;
  b.entropy_p = shannon_entropy(p).value;
  b.energy_p = std::exp(log_energy(p));
  b.energy_q = std::exp(log_energy(q));
  b.cross_entropy = oracle::require_converged(
      oracle::cross_entropy_integral(p, q, cfg), "bound_checks");
  b.entropy_energy_margin =
      b.entropy_p + 0.5 * b.energy_p - (1.0 - std::log(2.0));
  b.cross_entropy_margin =
      b.cross_entropy - (1.0 - std::sqrt(b.energy_p * b.energy_q));
  return b;
}

}  // namespace onicescu
