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

#include "onicescu/catalog.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "onicescu/special.hpp"

namespace onicescu {

namespace {

using Matrix = Eigen::MatrixXd;

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Truncation policy for the Poisson series below: a sweep direction stops
// once |term| <= cutoff * |partial sum|; the total term count is capped.
constexpr double kSeriesCutoff = 1e-15;
constexpr long kSeriesMaxTerms = 1000000;

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

void require_size(const Vector& v, Eigen::Index n, const char* tag) {
  if (v.size() != n) {
    std::ostringstream msg;
    msg << tag << ": source coordinates have length " << v.size()
        << ", expected " << n;
    throw InvalidSourceParam(msg.str());
  }
  if (!v.allFinite()) {
    throw InvalidSourceParam(std::string(tag) + ": non-finite coordinate");
  }
}

// Sum of term(x) over x = 0,1,2,... for |term| unimodal with peak near x0,
// swept outward from x0 in both directions.
double sum_unimodal_series(long x0, const std::function<double(long)>& term,
                           const char* what) {
  if (x0 < 0) x0 = 0;
  double sum = term(x0);
  long terms = 1;
  for (long x = x0 - 1; x >= 0; --x) {
    const double t = term(x);
    sum += t;
    ++terms;
    if (std::abs(t) <= kSeriesCutoff * std::abs(sum)) break;
  }
  for (long x = x0 + 1;; ++x) {
    const double t = term(x);
    sum += t;
    ++terms;
    if (std::abs(t) <= kSeriesCutoff * std::abs(sum)) break;
    if (terms > kSeriesMaxTerms) {
      throw NotConverged(std::string(what) + ": series term cap reached", sum,
                         std::abs(t));
    }
  }
  return sum;
}

// A carrier that is identically zero and its two closed moments.
void set_zero_carrier(FamilyDescriptor& f) {
  f.has_zero_carrier = true;
  f.carrier = [](const Vector&) { return 0.0; };
  f.carrier_expectation = [](const Vector&) { return 1.0; };
  f.carrier_entropy_term = [](const Vector&) { return 0.0; };
}

// --------------------------------------------------------------------------
// Poisson series (fixed truncation policy above).
// --------------------------------------------------------------------------

// E_lambda[1/x!] = sum_x exp(-lambda) lambda^x / (x!)^2; peak near sqrt(lambda).
double poisson_reciprocal_factorial_moment(double lambda) {
  const double log_lambda = std::log(lambda);
  auto term = [&](long x) {
    return std::exp(x * log_lambda - lambda -
                    2.0 * special::log_gamma(double(x) + 1.0));
  };
  return sum_unimodal_series(long(std::sqrt(lambda)), term,
                             "poisson carrier expectation");
}

// sum_x exp(-lambda) lambda^x log(x!) / x!; first nonzero term at x = 2,
// peak near lambda + 1.
double poisson_log_factorial_moment(double lambda) {
  const double log_lambda = std::log(lambda);
  auto term = [&](long x) {
    const double lg = special::log_gamma(double(x) + 1.0);
    return std::exp(x * log_lambda - lambda - lg) * lg;
  };
  return sum_unimodal_series(std::max<long>(2, long(lambda) + 1), term,
                             "poisson entropy series");
}

// I(p_lambda) = exp(-2 lambda) sum_x lambda^(2x) / (x!)^2; peak near lambda.
double poisson_energy_series(double lambda) {
  const double log_lambda = std::log(lambda);
  auto term = [&](long x) {
    return std::exp(2.0 * x * log_lambda - 2.0 * lambda -
                    2.0 * special::log_gamma(double(x) + 1.0));
  };
  return sum_unimodal_series(long(lambda), term, "poisson energy series");
}

// --------------------------------------------------------------------------
// MVN helpers. Natural coordinates are (v, vec(M)) of length d + d^2 with
// vec row-major; the density is exp(v.x - x'Mx/2 - F). F symmetrizes the
// matrix block so per-entry perturbations have well-defined derivatives.
// --------------------------------------------------------------------------

Matrix unpack_matrix(const Vector& flat, int d, int offset) {
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = flat[offset + r * d + c];
  return m;
}

void pack_matrix(const Matrix& m, int d, int offset, Vector& flat) {
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) flat[offset + r * d + c] = m(r, c);
}

bool nearly_symmetric(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

double half_log_det_from_llt(const Eigen::LLT<Matrix>& llt, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += std::log(llt.matrixL()(i, i));
  return s;
}

}  // namespace

// --------------------------------------------------------------------------
// Exponential: rate lambda > 0; theta = lambda, t(x) = -x, F = -log theta,
// support [0, inf), zero carrier.
// --------------------------------------------------------------------------

CatalogEntry make_exponential() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "exponential";
  f->tag = "exponential";
  f->natural_dim = 1;
  f->support = Support::half_line(0.0, /*closed=*/true);
  f->omega_points = {vec1(0.0), vec1(1.0), vec1(2.0)};
  set_zero_carrier(*f);

  f->log_normalizer = [](const Vector& th) { return -std::log(th[0]); };
  f->grad_log_normalizer = [](const Vector& th) { return vec1(-1.0 / th[0]); };
  f->to_natural_coords = [](const Vector& lam) { return vec1(lam[0]); };
  f->in_domain = [](const Vector& th) {
    return th.size() == 1 && th.allFinite() && th[0] > 0.0;
  };
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 1, "exponential");
    if (!(lam[0] > 0.0))
      throw InvalidSourceParam("exponential: rate must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) { return vec1(-x[0]); };
  f->log_density_eval = [](const Vector& th) {
    const double rate = th[0];
    const double log_rate = std::log(rate);
    return [rate, log_rate](const Vector& x) {
      if (x[0] < 0.0) return kNegInf;
      return log_rate - rate * x[0];
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(lambda): rate > 0";
  e.closed_form_energy = [](const Vector& lam) { return lam[0] / 2.0; };
  e.closed_form_entropy = [](const Vector& lam) {
    return 1.0 - std::log(lam[0]);
  };
  return e;
}

// --------------------------------------------------------------------------
// Normal: (mu, sigma); theta = (mu/sigma^2, -1/(2 sigma^2)), t = (x, x^2),
// F = -theta1^2/(4 theta2) + log(-pi/theta2)/2, zero carrier.
// --------------------------------------------------------------------------

namespace {

double normal_log_normalizer(const Vector& th) {
  return -th[0] * th[0] / (4.0 * th[1]) + 0.5 * std::log(-kPi / th[1]);
}

Vector normal_grad_log_normalizer(const Vector& th) {
  const double g1 = -th[0] / (2.0 * th[1]);
  const double g2 = th[0] * th[0] / (4.0 * th[1] * th[1]) - 0.5 / th[1];
  return vec2(g1, g2);
}

bool normal_in_domain(const Vector& th) {
  return th.size() == 2 && th.allFinite() && th[1] < 0.0;
}

}  // namespace

CatalogEntry make_normal() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "normal";
  f->tag = "normal";
  f->natural_dim = 2;
  f->support = Support::real_line();
  f->omega_points = {vec1(0.0), vec1(1.0), vec1(-1.0)};
  set_zero_carrier(*f);

  f->log_normalizer = normal_log_normalizer;
  f->grad_log_normalizer = normal_grad_log_normalizer;
  f->to_natural_coords = [](const Vector& lam) {
    const double s2 = lam[1] * lam[1];
    return vec2(lam[0] / s2, -0.5 / s2);
  };
  f->in_domain = normal_in_domain;
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 2, "normal");
    if (!(lam[1] > 0.0))
      throw InvalidSourceParam("normal: sigma must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) { return vec2(x[0], x[0] * x[0]); };
  f->log_density_eval = [](const Vector& th) {
    const double t1 = th[0], t2 = th[1];
    const double F = normal_log_normalizer(th);
    return [t1, t2, F](const Vector& x) {
      return t1 * x[0] + t2 * x[0] * x[0] - F;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(mu, sigma): mean and standard deviation, sigma > 0";
  e.closed_form_energy = [](const Vector& lam) {
    return 1.0 / (2.0 * lam[1] * std::sqrt(kPi));
  };
  e.closed_form_entropy = [](const Vector& lam) {
    return 0.5 * std::log(2.0 * kPi * std::numbers::e * lam[1] * lam[1]);
  };
  return e;
}

// --------------------------------------------------------------------------
// Multivariate normal on R^d: source (mu, Sigma row-major), natural
// (Sigma^-1 mu, vec(Sigma^-1)), zero carrier.
// --------------------------------------------------------------------------

CatalogEntry make_mvn(int d) {
  if (d < 1) throw std::invalid_argument("make_mvn: d must be >= 1");
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "mvn";
  {
    std::ostringstream tag;
    tag << "mvn[d=" << d << "]";
    f->tag = tag.str();
  }
  f->natural_dim = d + d * d;
  f->support = Support::real_line(d);
  {
    Vector zero = Vector::Zero(d);
    Vector e1 = Vector::Zero(d);
    e1[0] = 1.0;
    f->omega_points = {zero, e1, -e1};
  }
  set_zero_carrier(*f);

  const std::string tag = f->tag;

  f->log_normalizer = [d](const Vector& th) {
    const Vector v = th.head(d);
    const Matrix s =
        0.5 * (unpack_matrix(th, d, d) + unpack_matrix(th, d, d).transpose());
    Eigen::LLT<Matrix> llt(s);
    if (llt.info() != Eigen::Success) {
      throw DomainViolation("mvn: matrix block not positive definite");
    }
    const Vector y = llt.solve(v);
    return 0.5 * v.dot(y) - half_log_det_from_llt(llt, d) +
           0.5 * d * std::log(2.0 * kPi);
  };
  f->grad_log_normalizer = [d](const Vector& th) {
    const Vector v = th.head(d);
    Matrix m = unpack_matrix(th, d, d);
    const Matrix s = 0.5 * (m + m.transpose());
    Eigen::LLT<Matrix> llt(s);
    if (llt.info() != Eigen::Success) {
      throw DomainViolation("mvn: matrix block not positive definite");
    }
    const Vector mu = llt.solve(v);
    const Matrix sinv = llt.solve(Matrix::Identity(d, d));
    Vector g(d + d * d);
    g.head(d) = mu;
    Matrix gm = -0.5 * (mu * mu.transpose() + sinv);
    pack_matrix(gm, d, d, g);
    return g;
  };
  f->to_natural_coords = [d](const Vector& lam) {
    const Vector mu = lam.head(d);
    const Matrix sigma = unpack_matrix(lam, d, d);
    Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("mvn: Sigma not positive definite");
    }
    Matrix prec = llt.solve(Matrix::Identity(d, d));
    prec = 0.5 * (prec + prec.transpose());
    Vector th(d + d * d);
    th.head(d) = llt.solve(mu);
    pack_matrix(prec, d, d, th);
    return th;
  };
  f->in_domain = [d](const Vector& th) {
    if (th.size() != d + d * d || !th.allFinite()) return false;
    const Matrix m = unpack_matrix(th, d, d);
    if (!nearly_symmetric(m)) return false;
    Eigen::LLT<Matrix> llt(0.5 * (m + m.transpose()));
    return llt.info() == Eigen::Success;
  };
  f->validate_source = [d](const Vector& lam) {
    require_size(lam, d + d * d, "mvn");
    const Matrix sigma = unpack_matrix(lam, d, d);
    if (!nearly_symmetric(sigma)) {
      throw InvalidSourceParam("mvn: Sigma must be symmetric");
    }
    Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("mvn: Sigma not positive definite");
    }
  };
  f->sufficient_stat = [d](const Vector& x) {
    Vector t(d + d * d);
    t.head(d) = x;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) t[d + r * d + c] = -0.5 * x[r] * x[c];
    return t;
  };
  f->log_density_eval = [d, F = f->log_normalizer](const Vector& th) {
    const double Fv = F(th);
    const Vector v = th.head(d);
    const Matrix s =
        0.5 * (unpack_matrix(th, d, d) + unpack_matrix(th, d, d).transpose());
    return [d, Fv, v, s](const Vector& x) {
      double lin = 0.0, quad = 0.0;
      for (int r = 0; r < d; ++r) {
        lin += v[r] * x[r];
        double row = 0.0;
        for (int c = 0; c < d; ++c) row += s(r, c) * x[c];
        quad += x[r] * row;
      }
      return lin - 0.5 * quad - Fv;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(mu[d], Sigma[d*d] row-major): Sigma symmetric PD";
  e.closed_form_energy = [d](const Vector& lam) {
    const Matrix sigma = unpack_matrix(lam, d, d);
    Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("mvn: Sigma not positive definite");
    }
    return std::exp(-0.5 * d * std::log(kPi) - d * std::log(2.0) -
                    half_log_det_from_llt(llt, d));
  };
  e.closed_form_entropy = [d](const Vector& lam) {
    const Matrix sigma = unpack_matrix(lam, d, d);
    Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("mvn: Sigma not positive definite");
    }
    return 0.5 * d * (1.0 + std::log(2.0 * kPi)) +
           half_log_det_from_llt(llt, d);
  };
  return e;
}

// --------------------------------------------------------------------------
// LogNormal: (mu, sigma) of log x. Folding the 1/x factor into the
// sufficient statistics gives t = (log x, log^2 x), theta =
// (mu/sigma^2 - 1, -1/(2 sigma^2)) and F(theta) = F_normal(theta1+1, theta2),
// leaving a zero carrier.
// --------------------------------------------------------------------------

CatalogEntry make_lognormal() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "lognormal";
  f->tag = "lognormal";
  f->natural_dim = 2;
  f->support = Support::half_line(0.0, /*closed=*/false);
  f->omega_points = {vec1(1.0), vec1(2.0), vec1(0.5)};
  set_zero_carrier(*f);

  auto shifted = [](const Vector& th) { return vec2(th[0] + 1.0, th[1]); };

  f->log_normalizer = [shifted](const Vector& th) {
    return normal_log_normalizer(shifted(th));
  };
  f->grad_log_normalizer = [shifted](const Vector& th) {
    return normal_grad_log_normalizer(shifted(th));
  };
  f->to_natural_coords = [](const Vector& lam) {
    const double s2 = lam[1] * lam[1];
    return vec2(lam[0] / s2 - 1.0, -0.5 / s2);
  };
  f->in_domain = normal_in_domain;
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 2, "lognormal");
    if (!(lam[1] > 0.0))
      throw InvalidSourceParam("lognormal: sigma must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) {
    const double u = std::log(x[0]);
    return vec2(u, u * u);
  };
  f->log_density_eval = [shifted](const Vector& th) {
    const double t1 = th[0], t2 = th[1];
    const double F = normal_log_normalizer(shifted(th));
    return [t1, t2, F](const Vector& x) {
      if (x[0] <= 0.0) return kNegInf;
      const double u = std::log(x[0]);
      return t1 * u + t2 * u * u - F;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(mu, sigma): parameters of log x, sigma > 0";
  e.closed_form_energy = [](const Vector& lam) {
    const double mu = lam[0], sigma = lam[1];
    return std::exp(sigma * sigma / 4.0 - mu) / (2.0 * sigma * std::sqrt(kPi));
  };
  e.closed_form_entropy = [](const Vector& lam) {
    const double mu = lam[0], sigma = lam[1];
    return mu + 0.5 * std::log(2.0 * kPi * std::numbers::e * sigma * sigma);
  };
  return e;
}

// --------------------------------------------------------------------------
// Pareto with fixed scale k > 0: shape a > 0; theta = a + 1,
// F = -log(theta - 1) - (theta - 1) log k, support [k, inf). The mean
// identity grad F = E[t] fixes t(x) = -log x.
// --------------------------------------------------------------------------

CatalogEntry make_pareto(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("make_pareto: scale k must be finite and > 0");
  }
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "pareto";
  {
    std::ostringstream tag;
    tag << "pareto[k=" << k << "]";
    f->tag = tag.str();
  }
  f->natural_dim = 1;
  f->support = Support::half_line(k, /*closed=*/true);
  f->omega_points = {vec1(k), vec1(2.0 * k), vec1(3.0 * k)};
  set_zero_carrier(*f);

  const double log_k = std::log(k);

  f->log_normalizer = [log_k](const Vector& th) {
    return -std::log(th[0] - 1.0) - (th[0] - 1.0) * log_k;
  };
  f->grad_log_normalizer = [log_k](const Vector& th) {
    return vec1(-1.0 / (th[0] - 1.0) - log_k);
  };
  f->to_natural_coords = [](const Vector& lam) { return vec1(lam[0] + 1.0); };
  f->in_domain = [](const Vector& th) {
    return th.size() == 1 && th.allFinite() && th[0] > 1.0;
  };
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 1, "pareto");
    if (!(lam[0] > 0.0))
      throw InvalidSourceParam("pareto: shape a must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) { return vec1(-std::log(x[0])); };
  f->log_density_eval = [k, log_k](const Vector& th) {
    const double t = th[0];
    const double negF = std::log(t - 1.0) + (t - 1.0) * log_k;
    return [k, t, negF](const Vector& x) {
      if (x[0] < k) return kNegInf;
      return -t * std::log(x[0]) + negF;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(a): shape > 0; scale k fixed by the family instance";
  e.closed_form_energy = [k](const Vector& lam) {
    const double a = lam[0];
    return a * a / (k * (2.0 * a + 1.0));
  };
  e.closed_form_entropy = [k](const Vector& lam) {
    const double a = lam[0];
    return 1.0 + 1.0 / a + std::log(k / a);
  };
  return e;
}

// --------------------------------------------------------------------------
// Gamma: shape alpha > 0 and SCALE beta > 0; theta = (alpha - 1, -1/beta),
// t = (log x, x), F = log Gamma(theta1 + 1) - (theta1 + 1) log(-theta2).
// Energy exists only for alpha > 1/2.
// --------------------------------------------------------------------------

CatalogEntry make_gamma() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "gamma";
  f->tag = "gamma";
  f->natural_dim = 2;
  f->support = Support::half_line(0.0, /*closed=*/false);
  f->omega_points = {vec1(1.0), vec1(2.0), vec1(0.5)};
  set_zero_carrier(*f);

  f->log_normalizer = [](const Vector& th) {
    return special::log_gamma(th[0] + 1.0) -
           (th[0] + 1.0) * std::log(-th[1]);
  };
  f->grad_log_normalizer = [](const Vector& th) {
    const double g1 = special::digamma(th[0] + 1.0) - std::log(-th[1]);
    const double g2 = -(th[0] + 1.0) / th[1];
    return vec2(g1, g2);
  };
  f->to_natural_coords = [](const Vector& lam) {
    return vec2(lam[0] - 1.0, -1.0 / lam[1]);
  };
  f->in_domain = [](const Vector& th) {
    return th.size() == 2 && th.allFinite() && th[0] > -1.0 && th[1] < 0.0;
  };
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 2, "gamma");
    if (!(lam[0] > 0.0))
      throw InvalidSourceParam("gamma: shape alpha must be > 0");
    if (!(lam[1] > 0.0))
      throw InvalidSourceParam("gamma: scale beta must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) {
    return vec2(std::log(x[0]), x[0]);
  };
  f->log_density_eval = [F = f->log_normalizer](const Vector& th) {
    const double t1 = th[0], t2 = th[1];
    const double Fv = F(th);
    return [t1, t2, Fv](const Vector& x) {
      if (x[0] <= 0.0) return kNegInf;
      return t1 * std::log(x[0]) + t2 * x[0] - Fv;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(alpha, beta): shape > 0 and scale > 0";
  e.closed_form_energy = [](const Vector& lam) {
    const double alpha = lam[0], beta = lam[1];
    if (!(alpha > 0.5)) {
      throw EnergyUndefined(
          "gamma: energy undefined for alpha <= 1/2 (integral diverges)");
    }
    return std::exp(-std::log(beta) - std::log(2.0 * alpha - 1.0) -
                    special::log_beta(alpha, 0.5));
  };
  e.closed_form_entropy = [](const Vector& lam) {
    const double alpha = lam[0], beta = lam[1];
    return alpha + std::log(beta) + special::log_gamma(alpha) +
           (1.0 - alpha) * special::digamma(alpha);
  };
  return e;
}

// --------------------------------------------------------------------------
// Beta: (alpha, beta) > 0; theta = (alpha - 1, beta - 1),
// t = (log x, log(1-x)), F = log B(theta1 + 1, theta2 + 1), support (0, 1).
// Energy exists only for alpha > 1/2 and beta > 1/2.
// --------------------------------------------------------------------------

CatalogEntry make_beta() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "beta";
  f->tag = "beta";
  f->natural_dim = 2;
  f->support = Support::open_interval(0.0, 1.0);
  f->omega_points = {vec1(0.25), vec1(0.5), vec1(0.75)};
  set_zero_carrier(*f);

  f->log_normalizer = [](const Vector& th) {
    return special::log_beta(th[0] + 1.0, th[1] + 1.0);
  };
  f->grad_log_normalizer = [](const Vector& th) {
    const double a = th[0] + 1.0, b = th[1] + 1.0;
    const double psi_ab = special::digamma(a + b);
    return vec2(special::digamma(a) - psi_ab, special::digamma(b) - psi_ab);
  };
  f->to_natural_coords = [](const Vector& lam) {
    return vec2(lam[0] - 1.0, lam[1] - 1.0);
  };
  f->in_domain = [](const Vector& th) {
    return th.size() == 2 && th.allFinite() && th[0] > -1.0 && th[1] > -1.0;
  };
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 2, "beta");
    if (!(lam[0] > 0.0) || !(lam[1] > 0.0))
      throw InvalidSourceParam("beta: both shapes must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) {
    return vec2(std::log(x[0]), std::log1p(-x[0]));
  };
  f->log_density_eval = [F = f->log_normalizer](const Vector& th) {
    const double t1 = th[0], t2 = th[1];
    const double Fv = F(th);
    return [t1, t2, Fv](const Vector& x) {
      if (x[0] <= 0.0 || x[0] >= 1.0) return kNegInf;
      return t1 * std::log(x[0]) + t2 * std::log1p(-x[0]) - Fv;
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(alpha, beta): both shapes > 0";
  e.closed_form_energy = [](const Vector& lam) {
    const double a = lam[0], b = lam[1];
    if (!(a > 0.5) || !(b > 0.5)) {
      throw EnergyUndefined(
          "beta: energy undefined unless both shapes exceed 1/2");
    }
    return std::exp(special::log_beta(2.0 * a - 1.0, 2.0 * b - 1.0) -
                    2.0 * special::log_beta(a, b));
  };
  e.closed_form_entropy = [](const Vector& lam) {
    const double a = lam[0], b = lam[1];
    return special::log_beta(a, b) - (a - 1.0) * special::digamma(a) -
           (b - 1.0) * special::digamma(b) +
           (a + b - 2.0) * special::digamma(a + b);
  };
  return e;
}

double beta_energy_table_literal(double alpha, double beta) {
  if (!(alpha > 0.5) || !(beta > 0.5)) {
    throw EnergyUndefined(
        "beta: energy undefined unless both shapes exceed 1/2");
  }
  return std::exp(2.0 * special::log_beta(alpha, beta) +
                  special::log_gamma(2.0 * alpha - 1.0) +
                  special::log_gamma(2.0 * beta - 1.0) -
                  special::log_gamma(2.0 * alpha + 2.0 * beta - 2.0));
}

// --------------------------------------------------------------------------
// Poisson: mean lambda > 0; theta = log lambda on all of R, t(x) = x,
// F = exp(theta), carrier k(x) = -log x! on the lattice {0, 1, 2, ...}.
// Carrier moments are series with the fixed truncation policy.
// --------------------------------------------------------------------------

CatalogEntry make_poisson() {
  auto f = std::make_shared<FamilyDescriptor>();
  f->name = "poisson";
  f->tag = "poisson";
  f->natural_dim = 1;
  f->support = Support::nonneg_integers();
  f->omega_points = {vec1(0.0), vec1(1.0), vec1(2.0)};
  f->has_zero_carrier = false;

  f->log_normalizer = [](const Vector& th) { return std::exp(th[0]); };
  f->grad_log_normalizer = [](const Vector& th) {
    return vec1(std::exp(th[0]));
  };
  f->to_natural_coords = [](const Vector& lam) {
    return vec1(std::log(lam[0]));
  };
  f->in_domain = [](const Vector& th) {
    return th.size() == 1 && th.allFinite();
  };
  f->validate_source = [](const Vector& lam) {
    require_size(lam, 1, "poisson");
    if (!(lam[0] > 0.0))
      throw InvalidSourceParam("poisson: mean must be > 0");
  };
  f->sufficient_stat = [](const Vector& x) { return vec1(x[0]); };
  f->carrier = [](const Vector& x) {
    return -special::log_gamma(x[0] + 1.0);
  };
  f->carrier_expectation = [](const Vector& th) {
    return poisson_reciprocal_factorial_moment(std::exp(th[0]));
  };
  f->carrier_entropy_term = [](const Vector& th) {
    return -poisson_log_factorial_moment(std::exp(th[0]));
  };
  f->log_density_eval = [](const Vector& th) {
    const double t = th[0];
    const double lambda = std::exp(t);
    return [t, lambda](const Vector& x) {
      return t * x[0] - lambda - special::log_gamma(x[0] + 1.0);
    };
  };

  CatalogEntry e;
  e.family = f;
  e.source_doc = "(lambda): mean > 0";
  e.closed_form_energy = [](const Vector& lam) {
    return poisson_energy_series(lam[0]);
  };
  e.closed_form_entropy = [](const Vector& lam) {
    const double lambda = lam[0];
    return lambda * (1.0 - std::log(lambda)) +
           poisson_log_factorial_moment(lambda);
  };
  return e;
}

// --------------------------------------------------------------------------
// Registry and grids.
// --------------------------------------------------------------------------

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "normal", "mvn",   "lognormal", "exponential",
      "pareto", "gamma", "beta",      "poisson"};
  return names;
}

CatalogEntry make_default_entry(const std::string& name) {
  if (name == "exponential") return make_exponential();
  if (name == "normal") return make_normal();
  if (name == "mvn") return make_mvn(2);
  if (name == "lognormal") return make_lognormal();
  if (name == "pareto") return make_pareto(1.0);
  if (name == "gamma") return make_gamma();
  if (name == "beta") return make_beta();
  if (name == "poisson") return make_poisson();
  throw std::invalid_argument("unknown family: " + name);
}

namespace {

Vector mvn_source(double m1, double m2, double s11, double s12, double s22) {
  Vector v(6);
  v << m1, m2, s11, s12, s12, s22;
  return v;
}

}  // namespace

std::vector<Vector> default_source_grid(const std::string& name) {
  if (name == "exponential") {
    return {vec1(0.25), vec1(0.5), vec1(1.0), vec1(2.0), vec1(5.0)};
  }
  if (name == "normal") {
    return {vec2(0.0, 1.0), vec2(1.0, 0.5), vec2(-2.0, 2.0), vec2(3.0, 1.5),
            vec2(0.5, 0.8)};
  }
  if (name == "mvn") {
    return {mvn_source(0.0, 0.0, 1.0, 0.0, 1.0),
            mvn_source(1.0, -1.0, 1.0, 0.0, 2.0),
            mvn_source(0.0, 0.0, 2.0, 0.5, 1.0),
            mvn_source(1.0, 0.0, 1.0, -0.3, 0.8),
            mvn_source(-1.0, 1.0, 0.5, 0.0, 0.5)};
  }
  if (name == "lognormal") {
    return {vec2(0.0, 1.0), vec2(1.0, 0.5), vec2(-0.5, 0.75),
            vec2(0.25, 1.25), vec2(2.0, 0.6)};
  }
  if (name == "pareto") {
    return {vec1(0.75), vec1(1.0), vec1(1.5), vec1(2.5), vec1(4.0)};
  }
  if (name == "gamma") {
    return {vec2(1.0, 1.0), vec2(0.8, 2.0), vec2(2.0, 1.0), vec2(3.5, 0.5),
            vec2(5.0, 1.5)};
  }
  if (name == "beta") {
    return {vec2(1.0, 1.0), vec2(2.0, 2.0), vec2(0.8, 0.9), vec2(3.0, 2.0),
            vec2(1.5, 4.0)};
  }
  if (name == "poisson") {
    return {vec1(0.25), vec1(0.5), vec1(1.0), vec1(2.0), vec1(4.0)};
  }
  throw std::invalid_argument("unknown family: " + name);
}

std::vector<Vector> property_source_grid(const std::string& name) {
  std::vector<Vector> grid = default_source_grid(name);
  if (name == "exponential") {
    grid.push_back(vec1(0.75));
    grid.push_back(vec1(1.5));
    grid.push_back(vec1(3.0));
  } else if (name == "normal") {
    grid.push_back(vec2(-1.0, 1.2));
    grid.push_back(vec2(2.0, 0.6));
    grid.push_back(vec2(-0.5, 2.5));
  } else if (name == "mvn") {
    grid.push_back(mvn_source(2.0, 1.0, 1.5, 0.2, 0.6));
    grid.push_back(mvn_source(0.0, 1.0, 0.8, -0.2, 1.2));
    grid.push_back(mvn_source(-0.5, -0.5, 1.0, 0.4, 2.0));
  } else if (name == "lognormal") {
    grid.push_back(vec2(0.5, 1.0));
    grid.push_back(vec2(-1.0, 0.5));
    grid.push_back(vec2(1.5, 0.9));
  } else if (name == "pareto") {
    grid.push_back(vec1(0.6));
    grid.push_back(vec1(2.0));
    grid.push_back(vec1(3.0));
  } else if (name == "gamma") {
    grid.push_back(vec2(1.5, 2.0));
    grid.push_back(vec2(2.5, 1.2));
    grid.push_back(vec2(4.0, 0.8));
  } else if (name == "beta") {
    grid.push_back(vec2(2.0, 3.0));
    grid.push_back(vec2(4.0, 1.5));
    grid.push_back(vec2(0.9, 2.5));
  } else if (name == "poisson") {
    grid.push_back(vec1(0.75));
    grid.push_back(vec1(1.5));
    grid.push_back(vec1(3.0));
  }
  return grid;
}

Vector default_source_point(const std::string& name) {
  if (name == "exponential") return vec1(2.0);
  if (name == "normal") return vec2(0.0, 1.0);
  if (name == "mvn") return mvn_source(0.0, 0.0, 1.0, 0.0, 1.0);
  if (name == "lognormal") return vec2(0.0, 1.0);
  if (name == "pareto") return vec1(1.0);
  if (name == "gamma") return vec2(2.0, 1.0);
  if (name == "beta") return vec2(1.0, 1.0);
  if (name == "poisson") return vec1(1.0);
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace onicescu
