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

#include "onicescu/expfam.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace onicescu {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Support Support::real_line(int dim) {
  Support s;
  s.kind = Kind::interval;
  s.dim = dim;
  s.lower = -kInf;
  s.upper = kInf;
  return s;
}

Support Support::half_line(double lower, bool closed) {
  Support s;
  s.kind = Kind::interval;
  s.dim = 1;
  s.lower = lower;
  s.upper = kInf;
  s.lower_closed = closed;
  return s;
}

Support Support::open_interval(double lower, double upper) {
  Support s;
  s.kind = Kind::interval;
  s.dim = 1;
  s.lower = lower;
  s.upper = upper;
  return s;
}

Support Support::nonneg_integers() {
  Support s;
  s.kind = Kind::nonneg_integers;
  s.dim = 1;
  s.lower = 0.0;
  s.upper = kInf;
  s.lower_closed = true;
  return s;
}

bool Support::contains(const Vector& x) const {
  if (x.size() != dim) return false;
  if (kind == Kind::nonneg_integers) {
    const double v = x[0];
    return v >= 0.0 && std::abs(v - std::round(v)) < 1e-9;
  }
  for (int i = 0; i < dim; ++i) {
    const double v = x[i];
    if (std::isfinite(lower)) {
      if (lower_closed ? v < lower : v <= lower) return false;
    }
    if (std::isfinite(upper)) {
      if (upper_closed ? v > upper : v >= upper) return false;
    }
  }
  return true;
}

NaturalParam FamilyDescriptor::natural(const Vector& coords) const {
  if (coords.size() != natural_dim) {
    std::ostringstream msg;
    msg << tag << ": natural coordinates have length " << coords.size()
        << ", expected " << natural_dim;
    throw InvalidSourceParam(msg.str());
  }
  if (!in_domain(coords)) {
    throw DomainViolation(tag + ": natural parameter outside the domain");
  }
  return NaturalParam{tag, coords};
}

SourceParam FamilyDescriptor::source(const Vector& coords) const {
  validate_source(coords);
  return SourceParam{tag, coords};
}

NaturalParam FamilyDescriptor::to_natural(const SourceParam& lambda) const {
  if (lambda.family_tag != tag) {
    throw FamilyMismatch("to_natural: source parameter minted by " +
                         lambda.family_tag + ", family is " + tag);
  }
  return natural(to_natural_coords(lambda.coords));
}

Density::Density(FamilyPtr family, NaturalParam theta)
    : family_(std::move(family)), theta_(std::move(theta)) {
  if (theta_.family_tag != family_->tag) {
    throw FamilyMismatch("Density: natural parameter minted by " +
                         theta_.family_tag + ", family is " + family_->tag);
  }
}

Density::Density(FamilyPtr family, const SourceParam& lambda)
    : Density(family, family->to_natural(lambda)) {}

bool same_family(const Density& p, const Density& q) {
  return p.family().tag == q.family().tag;
}

void require_same_family(const Density& p, const Density& q,
                         const char* where) {
  if (!same_family(p, q)) {
    throw FamilyMismatch(std::string(where) + ": families differ (" +
                         p.family().tag + " vs " + q.family().tag + ")");
  }
}

bool check_combination(const FamilyDescriptor& family,
                       const std::vector<NaturalParam>& thetas,
                       const std::vector<double>& coeffs) {
  if (thetas.empty() || thetas.size() != coeffs.size()) {
    throw std::invalid_argument(
        "check_combination: thetas and coeffs must be equal-length and "
        "non-empty");
  }
  Vector sum = Vector::Zero(family.natural_dim);
  for (size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i].family_tag != family.tag) {
      throw FamilyMismatch("check_combination: parameter minted by " +
                           thetas[i].family_tag + ", family is " + family.tag);
    }
    sum += coeffs[i] * thetas[i].coords;
  }
  return family.in_domain(sum);
}

NaturalParam combine(const FamilyDescriptor& family,
                     const std::vector<NaturalParam>& thetas,
                     const std::vector<double>& coeffs,
                     const char* what) {
  if (thetas.empty() || thetas.size() != coeffs.size()) {
    throw std::invalid_argument(
        "combine: thetas and coeffs must be equal-length and non-empty");
  }
  Vector sum = Vector::Zero(family.natural_dim);
  for (size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i].family_tag != family.tag) {
      throw FamilyMismatch("combine: parameter minted by " +
                           thetas[i].family_tag + ", family is " + family.tag);
    }
    sum += coeffs[i] * thetas[i].coords;
  }
  if (!family.in_domain(sum)) {
    throw DomainViolation(std::string(what) + ": required combination leaves " +
                          family.tag + "'s natural domain");
  }
  return NaturalParam{family.tag, sum};
}

Vector finite_difference_gradient(const std::function<double(const Vector&)>& f,
                                  const Vector& x, double fd_step_scale) {
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = fd_step_scale * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace onicescu
