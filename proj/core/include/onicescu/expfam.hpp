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

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace onicescu {

using Vector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors. All precondition failures are exceptions; no NaN sentinels.
// ---------------------------------------------------------------------------

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source-space coordinates violate the family's source constraints
/// (e.g. sigma <= 0, weights off the simplex, wrong length).
class InvalidSourceParam : public Error {
 public:
  using Error::Error;
};

/// Two parameters that must belong to the same family do not.
class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

/// A natural-parameter combination required by a formula leaves the natural
/// domain (e.g. 2*theta outside Theta, so the quantity is undefined).
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// The requested informational energy does not exist for these parameters
/// (the defining integral diverges). A special case of DomainViolation.
class EnergyUndefined : public DomainViolation {
 public:
  using DomainViolation::DomainViolation;
};

/// An evaluation shortcut that requires a zero carrier (k(x) == 0) was asked
/// of a family whose carrier is not identically zero.
class CarrierNotZero : public Error {
 public:
  using Error::Error;
};

/// A matrix parameter that must be symmetric positive definite is not.
class NotPositiveDefinite : public InvalidSourceParam {
 public:
  using InvalidSourceParam::InvalidSourceParam;
};

/// A numerical routine (quadrature or series) failed to reach its tolerance.
/// Carries the best estimate and its error bound.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double best_estimate, double error_bound)
      : Error(what), best_estimate(best_estimate), error_bound(error_bound) {}
  double best_estimate;
  double error_bound;
};

// ---------------------------------------------------------------------------
// Support descriptions.
// ---------------------------------------------------------------------------

/// Common support of every density in a family. Either a real interval
/// (possibly unbounded, in `dim` ambient dimensions when the family is
/// multivariate) or the lattice of nonnegative integers.
struct Support {
  enum class Kind { interval, nonneg_integers };

  Kind kind = Kind::interval;
  int dim = 1;                 // ambient dimension; 1 unless multivariate
  double lower = 0.0;          // interval bounds, may be +-infinity
  double upper = 0.0;
  bool lower_closed = false;   // whether a finite endpoint belongs to support
  bool upper_closed = false;

  static Support real_line(int dim = 1);
  static Support half_line(double lower, bool closed);  // (lower, inf) or [lower, inf)
  static Support open_interval(double lower, double upper);
  static Support nonneg_integers();

  /// Membership test for a point (size must equal dim; lattice requires an
  /// integer value >= 0).
  bool contains(const Vector& x) const;
};

// ---------------------------------------------------------------------------
// Parameter records.
// ---------------------------------------------------------------------------

/// Coordinates in a family's source space (the conventional parameterization,
/// e.g. (mu, sigma) or a rate). Validated by the family that mints it.
struct SourceParam {
  std::string family_tag;
  Vector coords;
};

/// Natural-space coordinates theta. Minted by FamilyDescriptor::natural or
/// FamilyDescriptor::to_natural, which enforce length and domain membership.
struct NaturalParam {
  std::string family_tag;
  Vector coords;
};

// ---------------------------------------------------------------------------
// Family descriptor.
// ---------------------------------------------------------------------------

/// Immutable record defining one exponential family
///
///   p_theta(x) = exp(theta . t(x) - F(theta) + k(x))
///
/// through its log-normalizer F, gradient, source-to-natural map, natural
/// domain test, support, sufficient statistic t, carrier k, and two carrier
/// moments used by closed-form measures:
///
///   carrier_expectation(theta)  = E_theta[exp(k(x))]
///   carrier_entropy_term(theta) = E_theta[k(x)]
///
/// All callables are pure; descriptors are shared, immutable, and safe to use
/// from concurrent readers.
struct FamilyDescriptor {
  std::string name;        // stable family name ("normal", "mvn", ...)
  std::string tag;         // canonical identity, includes fixed constants
                           // ("pareto[k=2]", "mvn[d=2]")
  int natural_dim = 1;
  Support support;
  bool has_zero_carrier = true;
  std::vector<Vector> omega_points;  // >= 3 points of the support

  std::function<double(const Vector&)> log_normalizer;        // F(theta)
  std::function<Vector(const Vector&)> grad_log_normalizer;   // grad F
  std::function<Vector(const Vector&)> to_natural_coords;     // lambda -> theta
  std::function<bool(const Vector&)> in_domain;               // theta in Theta?

  /// Throws InvalidSourceParam (or a subclass such as NotPositiveDefinite)
  /// when lambda is not a valid source parameter; returns otherwise.
  std::function<void(const Vector&)> validate_source;
  std::function<Vector(const Vector&)> sufficient_stat;       // t(x)
  std::function<double(const Vector&)> carrier;               // k(x)
  std::function<double(const Vector&)> carrier_expectation;   // E[e^k]
  std::function<double(const Vector&)> carrier_entropy_term;  // E[k]

  /// theta -> fast point evaluator of log p_theta. Lets families hoist
  /// per-theta work (normalizer, factorizations) out of quadrature loops.
  std::function<std::function<double(const Vector&)>(const Vector&)>
      log_density_eval;

  /// log p_theta(x). Convenience wrapper over log_density_eval.
  double log_density(const Vector& theta, const Vector& x) const {
    return log_density_eval(theta)(x);
  }

  /// Mint a validated natural parameter from raw coordinates.
  NaturalParam natural(const Vector& coords) const;

  /// Mint a validated source parameter from raw coordinates.
  SourceParam source(const Vector& coords) const;

  /// Map a validated source parameter to its natural image.
  NaturalParam to_natural(const SourceParam& lambda) const;
};

using FamilyPtr = std::shared_ptr<const FamilyDescriptor>;

// ---------------------------------------------------------------------------
// Density: one member of a family.
// ---------------------------------------------------------------------------

/// A density p_theta: a family plus a validated natural parameter.
class Density {
 public:
  Density(FamilyPtr family, NaturalParam theta);
  Density(FamilyPtr family, const SourceParam& lambda);

  const FamilyDescriptor& family() const { return *family_; }
  FamilyPtr family_ptr() const { return family_; }
  const Vector& theta() const { return theta_.coords; }
  const NaturalParam& natural() const { return theta_; }

  double log_density(const Vector& x) const {
    return family_->log_density(theta_.coords, x);
  }

 private:
  FamilyPtr family_;
  NaturalParam theta_;
};

/// True iff both densities come from the same family (by canonical tag).
/// Throwing counterpart used by pairwise measures.
bool same_family(const Density& p, const Density& q);
void require_same_family(const Density& p, const Density& q,
                         const char* where);

// ---------------------------------------------------------------------------
// Domain checks for natural-parameter combinations.
// ---------------------------------------------------------------------------

/// True iff sum_i coeffs[i] * thetas[i] lies in the family's natural domain.
/// All thetas must share one family; throws FamilyMismatch otherwise and
/// std::invalid_argument when sizes differ or the lists are empty.
bool check_combination(const FamilyDescriptor& family,
                       const std::vector<NaturalParam>& thetas,
                       const std::vector<double>& coeffs);

/// The combination itself, validated: throws DomainViolation when the result
/// leaves the natural domain.
NaturalParam combine(const FamilyDescriptor& family,
                     const std::vector<NaturalParam>& thetas,
                     const std::vector<double>& coeffs,
                     const char* what);

// ---------------------------------------------------------------------------
// Verification knobs shared by self-checks and tests.
// ---------------------------------------------------------------------------

/// Central record of finite-difference steps and check tolerances, so no
/// tolerance is buried in call sites.
struct CheckConfig {
  double fd_step_scale = 1e-5;          // step = scale * max(1, |theta_i|)
  double grad_rtol = 1e-5;              // FD gradient vs grad_log_normalizer
  double normalization_rtol = 1e-7;     // oracle integral of p vs 1
  double mean_identity_rtol = 1e-6;     // grad F vs oracle E[t]
  double closed_vs_generic_rtol = 1e-9; // catalog closed forms vs generic route
  double entropy_oracle_rtol = 1e-6;    // closed entropy vs oracle integral
  double omega_invariance_rtol = 1e-10; // omega-form independence of omega
};

/// Central finite-difference gradient of f at x (component-wise steps
/// fd_step_scale * max(1, |x_i|)).
Vector finite_difference_gradient(const std::function<double(const Vector&)>& f,
                                  const Vector& x, double fd_step_scale);

}  // namespace onicescu
