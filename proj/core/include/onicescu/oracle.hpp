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

#include <vector>

#include "onicescu/expfam.hpp"

// Brute-force numerical reference for every closed-form quantity in the
// library. Everything here evaluates densities only through log_density,
// sufficient_stat, and carrier; no closed-form measure or catalog expression
// is ever consulted, so agreement between the two routes is evidence, not
// circularity.
//
// Continuous supports use adaptive Gauss-Kronrod (G7, K15) panels after an
// integrand transform: half-infinite supports default to a log substitution
// (a rational map is available as an alternative), the real line uses the
// rational map x = t / (1 - t^2). Lattice supports are summed from the mode
// outward. Multivariate interval supports (dim 2 or 3) use iterated adaptive
// quadrature and run at 100x the configured tolerances; one-dimensional
// integrals honor the configured tolerances exactly.

namespace onicescu::oracle {

struct QuadratureConfig {
  enum class Transform { log_substitution, rational_map };

  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  Transform half_infinite_transform = Transform::log_substitution;
  double series_term_ratio_cutoff = 1e-15;
  long series_max_terms = 1000000;
};

struct OracleResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  long evaluations = 0;
  bool converged = false;  // error_estimate met the effective tolerance
};

/// Value of a result that must serve as a verification reference;
/// throws NotConverged when the result did not meet tolerance.
double require_converged(const OracleResult& r, const char* what);

/// integral of p (must be 1 for any valid density).
OracleResult normalization(const Density& p, const QuadratureConfig& cfg = {});

/// integral of p * q over the common support (cross informational energy).
OracleResult integrate_product(const Density& p, const Density& q,
                               const QuadratureConfig& cfg = {});

/// integral of p^a * q^b (Hoelder verification).
OracleResult integrate_power_product(const Density& p, const Density& q,
                                     double a, double b,
                                     const QuadratureConfig& cfg = {});

/// integral of (sum_i w_i p_i)^2 for a finite mixture of one family.
OracleResult integrate_mixture_square(const std::vector<double>& weights,
                                      const std::vector<Density>& components,
                                      const QuadratureConfig& cfg = {});

/// -integral of p log p (Shannon entropy; 0 log 0 taken as 0).
OracleResult entropy_integral(const Density& p,
                              const QuadratureConfig& cfg = {});

/// -integral of p log q (cross entropy).
OracleResult cross_entropy_integral(const Density& p, const Density& q,
                                    const QuadratureConfig& cfg = {});

enum class Moment {
  sufficient_stat,  // E_p[t(x)], one result per component
  exp_carrier,      // E_p[exp(k(x))]
  carrier,          // E_p[k(x)]
};

/// Moments of the sufficient statistic or carrier under p. Returns one result
/// per component for sufficient_stat, a single result otherwise.
std::vector<OracleResult> moment_expectation(const Density& p, Moment which,
                                             const QuadratureConfig& cfg = {});

}  // namespace onicescu::oracle
