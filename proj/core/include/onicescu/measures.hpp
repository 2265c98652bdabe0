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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onicescu/expfam.hpp"
#include "onicescu/oracle.hpp"

// Closed-form information measures for exponential-family densities:
// informational energy I(p) = integral of p^2, cross energy I(p,q),
// the correlation coefficient rho(p,q) = I(p,q)/sqrt(I(p)I(q)), the
// Cauchy-Schwarz divergence D_CS = -log rho, Hoelder divergences, Shannon
// entropy, derived entropies, mixture energy, and two inequality bounds.
//
// Everything is computed in the log domain and exponentiated last. The
// omega-trick routes evaluate the same quantities from log-density values at
// a single support point; they require a zero carrier and are independent of
// the chosen point, which the test suite exploits.

namespace onicescu {

enum class Method { closed_form, omega_trick, oracle };

/// Value of a measure plus how it was obtained. `valid` records that all
/// domain preconditions held (construction throws otherwise, so returned
/// reports always carry true).
struct MeasureReport {
  double value = 0.0;
  Method method = Method::closed_form;
  bool valid = true;
  std::string notes;  // diagnostics: cross-check deltas, omega used, ...
  std::optional<double> error_estimate;
};

/// Finite mixture of one family: nonnegative weights summing to 1 (within
/// 1e-12) over validated component densities.
class Mixture {
 public:
  Mixture(std::vector<double> weights, std::vector<Density> components);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Density>& components() const { return components_; }

 private:
  std::vector<double> weights_;
  std::vector<Density> components_;
};

// --- Energies ---------------------------------------------------------------

/// I(p) = integral of p^2. Requires 2*theta in the natural domain;
/// throws DomainViolation (EnergyUndefined cases arrive as DomainViolation)
/// otherwise.
MeasureReport energy(const Density& p);

/// I(p,q) = integral of p*q. Requires theta1 + theta2 in the natural domain.
MeasureReport cross_energy(const Density& p, const Density& q);

/// log I(p) and log I(p,q); the building blocks above, exposed for
/// compositions that must stay in the log domain.
double log_energy(const Density& p);
double log_cross_energy(const Density& p, const Density& q);

// --- Correlation and divergences --------------------------------------------

/// rho(p,q) = I(p,q)/sqrt(I(p)I(q)), in (0, 1].
MeasureReport correlation(const Density& p, const Density& q);

/// D_CS(p,q) = -log rho(p,q) >= 0.
MeasureReport cauchy_schwarz(const Density& p, const Density& q);

/// Jensen gap of the log-normalizer:
/// J_F(t1, t2) = (F(t1) + F(t2))/2 - F((t1 + t2)/2) >= 0.
double jensen_F(const FamilyDescriptor& family, const NaturalParam& theta1,
                const NaturalParam& theta2);

/// Hoelder divergence D_H^{alpha,gamma}(p:q) for conjugate exponents
/// (alpha, beta), 1/alpha + 1/beta = 1, alpha > 1, gamma > 0. Requires a
/// zero carrier. Evaluates the omega-trick log-likelihood form, cross-checks
/// it against the log-normalizer form, and returns the former.
/// D_H^{2,2} = D_CS.
MeasureReport holder(const Density& p, const Density& q, double alpha,
                     double gamma);

/// The two Hoelder routes individually (omega defaults to the family's
/// first omega point when omitted elsewhere).
double holder_F_form(const Density& p, const Density& q, double alpha,
                     double gamma);
double holder_omega(const Density& p, const Density& q, double alpha,
                    double gamma, const Vector& omega);

// --- Omega-trick routes (zero-carrier families only) -------------------------

/// I(p) = p(omega)^2 / p_{2 theta}(omega); independent of omega.
double energy_omega(const Density& p, const Vector& omega);

/// I(p,q) = p(omega) q(omega) / p_{theta1+theta2}(omega).
double cross_energy_omega(const Density& p, const Density& q,
                          const Vector& omega);

/// rho from log-density values at omega.
double correlation_omega(const Density& p, const Density& q,
                         const Vector& omega);

/// D_CS as a difference of log-density values at omega.
double cauchy_schwarz_omega(const Density& p, const Density& q,
                            const Vector& omega);

// --- Entropies ---------------------------------------------------------------

/// Shannon entropy H(p) = F(theta) - theta . grad F(theta) - E[k(x)].
MeasureReport shannon_entropy(const Density& p);

/// Same quantity through the Legendre conjugate:
/// H(p) = -F*(eta) - E[k(x)] at eta = grad F(theta).
double entropy_via_conjugate(const Density& p);

/// Renyi entropy of order 2: -log I(p).
double renyi2(const Density& p);

/// Vajda quadratic entropy: 1 - I(p).
double vajda2(const Density& p);

// --- Jensen divergence, mixtures, bounds -------------------------------------

/// J_I(p,q) = (I(p)+I(q))/2 - I((p+q)/2) = (I(p)+I(q)-2 I(p,q))/4
///          = (1/4) integral of (p-q)^2.
MeasureReport energy_jensen_divergence(const Density& p, const Density& q);

/// I(m) = sum_ij w_i w_j I(p_i, p_j) for a mixture m.
MeasureReport mixture_energy(const Mixture& m);

/// The two inequality bounds, with the cross entropy taken from the oracle.
struct BoundReport {
  double entropy_p = 0.0;        // H(p), closed form
  double energy_p = 0.0;         // I(p)
  double energy_q = 0.0;         // I(q)
  double cross_entropy = 0.0;    // H_x(p:q), oracle value
  double entropy_energy_margin = 0.0;  // H(p)+I(p)/2 - (1-log 2)   >= 0
  double cross_entropy_margin = 0.0;   // H_x - (1-sqrt(I(p)I(q)))  >= 0
};
BoundReport bound_checks(const Density& p, const Density& q,
                         const oracle::QuadratureConfig& cfg = {});

}  // namespace onicescu
