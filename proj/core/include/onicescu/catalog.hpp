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

#include <string>
#include <vector>

#include "onicescu/expfam.hpp"

namespace onicescu {

/// One catalog family: the descriptor plus per-family closed-form reference
/// expressions in source coordinates. The closed forms must agree with the
/// generic energy route; they exist so that both routes can be cross-checked.
struct CatalogEntry {
  FamilyPtr family;
  std::string source_doc;  // human description of source coordinates

  /// Informational energy in source coordinates; throws EnergyUndefined when
  /// the defining integral diverges for these parameters.
  std::function<double(const Vector&)> closed_form_energy;

  /// Differential (or discrete) Shannon entropy in source coordinates.
  std::function<double(const Vector&)> closed_form_entropy;
};

// Constructors for the eight catalog families. Source coordinate layouts:
//   exponential: (lambda), rate > 0
//   normal:      (mu, sigma), sigma > 0 the standard deviation
//   mvn:         (mu[0..d), Sigma row-major[d*d]), Sigma symmetric PD
//   lognormal:   (mu, sigma) of the underlying normal, sigma > 0
//   pareto:      (a), shape > 0; scale k > 0 fixed per family instance
//   gamma:       (alpha, beta), shape > 0 and SCALE > 0
//   beta:        (alpha, beta), both > 0
//   poisson:     (lambda), mean > 0
CatalogEntry make_exponential();
CatalogEntry make_normal();
CatalogEntry make_mvn(int d);
CatalogEntry make_lognormal();
CatalogEntry make_pareto(double k);
CatalogEntry make_gamma();
CatalogEntry make_beta();
CatalogEntry make_poisson();

/// A widely printed alternative expression for the Beta energy,
///   B^2(a,b) * Gamma(2a-1) * Gamma(2b-1) / Gamma(2a+2b-2),
/// kept only so its disagreement with brute-force integration can be shown;
/// the catalog's closed_form_energy uses B(2a-1,2b-1)/B^2(a,b), which the
/// quadrature oracle confirms. Requires a > 1/2 and b > 1/2.
double beta_energy_table_literal(double alpha, double beta);

/// Canonical family names in reporting order.
const std::vector<std::string>& family_names();

/// Entry for `name` with default fixed constants (pareto: k=1; mvn: d=2).
CatalogEntry make_default_entry(const std::string& name);

/// Documented source-coordinate verification grid (5 points per family;
/// mvn grid is d=2). Every point is valid for energy, entropy, and pairwise
/// measures.
std::vector<Vector> default_source_grid(const std::string& name);

/// Larger grid for pairwise property sweeps (8 points; 64 ordered pairs).
std::vector<Vector> property_source_grid(const std::string& name);

/// Default parameter point used by the summary table.
Vector default_source_point(const std::string& name);

}  // namespace onicescu
