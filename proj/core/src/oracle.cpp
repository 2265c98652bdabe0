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

#include "onicescu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace onicescu::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Pointwise integrand over the support; x arrives with the support's
// dimension. Implementations must return finite values or exactly 0 where
// the density underflows.
using Integrand = std::function<double(const Vector&)>;

// ---------------------------------------------------------------------------
// 15-point Kronrod rule with embedded 7-point Gauss rule.
// ---------------------------------------------------------------------------

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double error;
};

// One Kronrod panel over [a, b] with the QUADPACK-style error estimate.
Panel gk15(const std::function<double(double)>& f, double a, double b,
           long& evaluations) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(c);
  evaluations += 15;

  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.integral = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  p.error = err;
  return p;
}

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

// Worst-panel-first adaptive subdivision over [a, b].
OracleResult adaptive_gk(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol,
                         int max_subdivisions, long& evaluations) {
  std::vector<Panel> heap;
  heap.push_back(gk15(f, a, b, evaluations));
  double total = heap[0].integral;
  double err = heap[0].error;

  int splits = 0;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         splits < max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), PanelWorse{});
    const Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Panel at roundoff width; put it back and stop subdividing.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), PanelWorse{});
      break;
    }
    const Panel left = gk15(f, worst.a, mid, evaluations);
    const Panel right = gk15(f, mid, worst.b, evaluations);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), PanelWorse{});
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), PanelWorse{});
    ++splits;

    total = 0.0;
    err = 0.0;
    for (const Panel& p : heap) {
      total += p.integral;
      err += p.error;
    }
  }

  OracleResult r;
  r.value = total;
  r.error_estimate = err;
  r.evaluations = evaluations;
  r.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
  return r;
}

// ---------------------------------------------------------------------------
// Integrand transforms onto a finite parameter interval. The wrapped
// integrand returns 0 whenever the raw value is 0, so jacobian overflow near
// the endpoints cannot produce 0 * inf.
// ---------------------------------------------------------------------------

struct Mapped {
  std::function<double(double)> g;
  double lo, hi;
};

// x = t / (1 - t^2) maps (-1, 1) onto the real line.
Mapped map_real_line(const Integrand& h) {
  auto xbuf = std::make_shared<Vector>(1);
  Mapped m;
  m.lo = -1.0;
  m.hi = 1.0;
  m.g = [h, xbuf](double t) {
    const double om = 1.0 - t * t;
    (*xbuf)[0] = t / om;
    const double v = h(*xbuf);
    if (v == 0.0) return 0.0;
    return v * (1.0 + t * t) / (om * om);
  };
  return m;
}

// x = a + t / (1 - t) maps [0, 1) onto [a, inf).
Mapped map_half_line_rational(double a, const Integrand& h) {
  auto xbuf = std::make_shared<Vector>(1);
  Mapped m;
  m.lo = 0.0;
  m.hi = 1.0;
  m.g = [a, h, xbuf](double t) {
    const double om = 1.0 - t;
    (*xbuf)[0] = a + t / om;
    const double v = h(*xbuf);
    if (v == 0.0) return 0.0;
    return v / (om * om);
  };
  return m;
}

// Log substitution x = exp(u) followed by the real-line rational map on u;
// maps (-1, 1) onto (0, inf).
Mapped map_positive_log(const Integrand& h) {
  auto xbuf = std::make_shared<Vector>(1);
  Mapped m;
  m.lo = -1.0;
  m.hi = 1.0;
  m.g = [h, xbuf](double t) {
    const double om = 1.0 - t * t;
    const double u = t / om;
    const double x = std::exp(u);
    if (x == 0.0 || std::isinf(x)) return 0.0;
    (*xbuf)[0] = x;
    const double v = h(*xbuf);
    if (v == 0.0) return 0.0;
    return v * x * (1.0 + t * t) / (om * om);
  };
  return m;
}

// Log substitution x = a exp(w), w >= 0, with w = t / (1 - t); maps [0, 1)
// onto [a, inf) for a > 0.
Mapped map_half_line_log(double a, const Integrand& h) {
  auto xbuf = std::make_shared<Vector>(1);
  Mapped m;
  m.lo = 0.0;
  m.hi = 1.0;
  m.g = [a, h, xbuf](double t) {
    const double om = 1.0 - t;
    const double w = t / om;
    const double x = a * std::exp(w);
    if (std::isinf(x)) return 0.0;
    (*xbuf)[0] = x;
    const double v = h(*xbuf);
    if (v == 0.0) return 0.0;
    return v * x / (om * om);
  };
  return m;
}

Mapped map_finite(double a, double b, const Integrand& h) {
  auto xbuf = std::make_shared<Vector>(1);
  Mapped m;
  m.lo = a;
  m.hi = b;
  m.g = [h, xbuf](double t) {
    (*xbuf)[0] = t;
    return h(*xbuf);
  };
  return m;
}

Mapped map_support_1d(const Support& sup, QuadratureConfig::Transform tr,
                      const Integrand& h) {
  const bool lower_finite = std::isfinite(sup.lower);
  const bool upper_finite = std::isfinite(sup.upper);
  if (lower_finite && upper_finite) return map_finite(sup.lower, sup.upper, h);
  if (!lower_finite && !upper_finite) return map_real_line(h);
  if (lower_finite) {
    if (tr == QuadratureConfig::Transform::rational_map) {
      return map_half_line_rational(sup.lower, h);
    }
    if (sup.lower == 0.0) return map_positive_log(h);
    return map_half_line_log(sup.lower, h);
  }
  throw std::invalid_argument("oracle: unsupported support interval");
}

// ---------------------------------------------------------------------------
// Lattice summation: locate the peak of |h|, then sweep outward until terms
// fall below the cutoff relative to the partial sum.
// ---------------------------------------------------------------------------

OracleResult sum_lattice(const Integrand& h, const QuadratureConfig& cfg) {
  auto xbuf = std::make_shared<Vector>(1);
  auto term = [&](long x) {
    (*xbuf)[0] = double(x);
    return h(*xbuf);
  };

  long evaluations = 0;

  // Geometric probe for the neighborhood of the peak, then a hill climb.
  long x0 = 0;
  double best = std::abs(term(0));
  ++evaluations;
  for (long probe = 1; probe <= (1L << 30); probe *= 2) {
    const double v = std::abs(term(probe));
    ++evaluations;
    if (v > best) {
      best = v;
      x0 = probe;
    } else if (probe > 8 * (x0 + 1)) {
      break;
    }
  }
  while (std::abs(term(x0 + 1)) > std::abs(term(x0))) {
    ++x0;
    evaluations += 2;
  }
  while (x0 > 0 && std::abs(term(x0 - 1)) > std::abs(term(x0))) {
    --x0;
    evaluations += 2;
  }

  const double cutoff = cfg.series_term_ratio_cutoff;
  const int grace_needed = 3;

  double sum = term(x0);
  ++evaluations;
  double tail_bound = 0.0;
  bool capped = false;

  // Downward sweep.
  {
    int grace = 0;
    for (long x = x0 - 1; x >= 0; --x) {
      const double t = term(x);
      ++evaluations;
      sum += t;
      if (std::abs(t) <= cutoff * std::abs(sum)) {
        if (++grace >= grace_needed) {
          tail_bound += std::abs(t) * double(x);
          break;
        }
      } else {
        grace = 0;
      }
      if (evaluations > cfg.series_max_terms) {
        capped = true;
        tail_bound += std::abs(t) * double(x);
        break;
      }
    }
  }
  // Upward sweep; tail bounded by a geometric extrapolation of the last
  // observed ratio.
  {
    int grace = 0;
    double prev = std::abs(sum) > 0 ? std::abs(sum) : 1.0;
    double last = 0.0, second_last = 0.0;
    for (long x = x0 + 1;; ++x) {
      const double t = term(x);
      ++evaluations;
      sum += t;
      second_last = last;
      last = std::abs(t);
      if (last <= cutoff * std::abs(sum)) {
        if (++grace >= grace_needed) {
          double ratio = second_last > 0.0 ? last / second_last : 0.5;
          if (ratio >= 0.999) ratio = 0.999;
          tail_bound += last * ratio / (1.0 - ratio);
          break;
        }
      } else {
        grace = 0;
      }
      if (evaluations > cfg.series_max_terms) {
        capped = true;
        tail_bound += last * 10.0;
        break;
      }
      (void)prev;
    }
  }

  OracleResult r;
  r.value = sum;
  r.error_estimate =
      tail_bound + cutoff * std::abs(sum) * double(2 * grace_needed);
  r.evaluations = evaluations;
  r.converged =
      !capped && r.error_estimate <=
                     std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum));
  return r;
}

// ---------------------------------------------------------------------------
// Iterated integration for multivariate interval supports (dim 2 or 3).
// Runs at 100x the configured tolerances; each inner level is solved 50x
// tighter than its parent and contributes its worst error to the estimate.
// ---------------------------------------------------------------------------

struct LevelResult {
  double value;
  double error;
};

LevelResult integrate_axes(const Integrand& h, Vector& x, int axis, int dim,
                           double abs_tol, double rel_tol,
                           int max_subdivisions, long& evaluations) {
  if (axis == dim - 1) {
    auto f = [&](double t) {
      const double om = 1.0 - t * t;
      x[axis] = t / om;
      const double v = h(x);
      if (v == 0.0) return 0.0;
      return v * (1.0 + t * t) / (om * om);
    };
    const OracleResult r = adaptive_gk(f, -1.0, 1.0, abs_tol, rel_tol,
                                       max_subdivisions, evaluations);
    return {r.value, r.error_estimate};
  }

  double worst_child = 0.0;
  auto f = [&](double t) {
    const double om = 1.0 - t * t;
    x[axis] = t / om;
    const LevelResult inner =
        integrate_axes(h, x, axis + 1, dim, abs_tol / 50.0, rel_tol / 50.0,
                       max_subdivisions, evaluations);
    worst_child = std::max(worst_child, inner.error);
    if (inner.value == 0.0) return 0.0;
    return inner.value * (1.0 + t * t) / (om * om);
  };
  const OracleResult r = adaptive_gk(f, -1.0, 1.0, abs_tol, rel_tol,
                                     max_subdivisions, evaluations);
  return {r.value, r.error_estimate + 2.0 * worst_child};
}

OracleResult integrate_interval_nd(const Integrand& h, const Support& sup,
                                   const QuadratureConfig& cfg) {
  if (sup.dim > 3) {
    throw std::invalid_argument(
        "oracle: interval supports handled up to dimension 3");
  }
  if (std::isfinite(sup.lower) || std::isfinite(sup.upper)) {
    throw std::invalid_argument(
        "oracle: multivariate supports must span the whole space");
  }
  const double abs_eff = cfg.abs_tol * 100.0;
  const double rel_eff = cfg.rel_tol * 100.0;
  long evaluations = 0;
  Vector x(sup.dim);
  const LevelResult lr = integrate_axes(h, x, 0, sup.dim, abs_eff, rel_eff,
                                        cfg.max_subdivisions, evaluations);
  OracleResult r;
  r.value = lr.value;
  r.error_estimate = lr.error;
  r.evaluations = evaluations;
  r.converged =
      lr.error <= std::max(abs_eff, rel_eff * std::abs(lr.value));
  return r;
}

// Entry point: integrate an Integrand over a family's support.
OracleResult integrate_support(const Support& sup, const Integrand& h,
                               const QuadratureConfig& cfg) {
  if (sup.kind == Support::Kind::nonneg_integers) {
    return sum_lattice(h, cfg);
  }
  if (sup.dim > 1) {
    return integrate_interval_nd(h, sup, cfg);
  }
  const Mapped m = map_support_1d(sup, cfg.half_infinite_transform, h);
  long evaluations = 0;
  return adaptive_gk(m.g, m.lo, m.hi, cfg.abs_tol, cfg.rel_tol,
                     cfg.max_subdivisions, evaluations);
}

using LogEval = std::function<double(const Vector&)>;

LogEval curried(const Density& p) {
  return p.family().log_density_eval(p.theta());
}

}  // namespace

double require_converged(const OracleResult& r, const char* what) {
  if (!r.converged) {
    throw NotConverged(std::string(what) +
                           ": numerical reference did not reach tolerance",
                       r.value, r.error_estimate);
  }
  return r.value;
}

OracleResult normalization(const Density& p, const QuadratureConfig& cfg) {
  const LogEval lp = curried(p);
  return integrate_support(
      p.family().support,
      [lp](const Vector& x) { return std::exp(lp(x)); }, cfg);
}

OracleResult integrate_product(const Density& p, const Density& q,
                               const QuadratureConfig& cfg) {
  require_same_family(p, q, "oracle::integrate_product");
  const LogEval lp = curried(p);
  const LogEval lq = curried(q);
  return integrate_support(
      p.family().support,
      [lp, lq](const Vector& x) { return std::exp(lp(x) + lq(x)); }, cfg);
}

OracleResult integrate_power_product(const Density& p, const Density& q,
                                     double a, double b,
                                     const QuadratureConfig& cfg) {
  require_same_family(p, q, "oracle::integrate_power_product");
  const LogEval lp = curried(p);
  const LogEval lq = curried(q);
  return integrate_support(
      p.family().support,
      [lp, lq, a, b](const Vector& x) {
        return std::exp(a * lp(x) + b * lq(x));
      },
      cfg);
}

OracleResult integrate_mixture_square(const std::vector<double>& weights,
                                      const std::vector<Density>& components,
                                      const QuadratureConfig& cfg) {
  if (weights.empty() || weights.size() != components.size()) {
    throw std::invalid_argument(
        "oracle::integrate_mixture_square: weights and components must be "
        "equal-length and non-empty");
  }
  for (size_t i = 1; i < components.size(); ++i) {
    require_same_family(components[0], components[i],
                        "oracle::integrate_mixture_square");
  }
  std::vector<LogEval> evals;
  evals.reserve(components.size());
  for (const Density& c : components) evals.push_back(curried(c));
  return integrate_support(
      components[0].family().support,
      [&weights, evals](const Vector& x) {
        double m = 0.0;
        for (size_t i = 0; i < evals.size(); ++i) {
          m += weights[i] * std::exp(evals[i](x));
        }
        return m * m;
      },
      cfg);
}

OracleResult entropy_integral(const Density& p, const QuadratureConfig& cfg) {
  const LogEval lp = curried(p);
  return integrate_support(
      p.family().support,
      [lp](const Vector& x) {
        const double l = lp(x);
        const double pe = std::exp(l);
        if (pe == 0.0) return 0.0;  // 0 log 0 -> 0
        return -pe * l;
      },
      cfg);
}

OracleResult cross_entropy_integral(const Density& p, const Density& q,
                                    const QuadratureConfig& cfg) {
  require_same_family(p, q, "oracle::cross_entropy_integral");
  const LogEval lp = curried(p);
  const LogEval lq = curried(q);
  return integrate_support(
      p.family().support,
      [lp, lq](const Vector& x) {
        const double pe = std::exp(lp(x));
        if (pe == 0.0) return 0.0;
        return -pe * lq(x);
      },
      cfg);
}

std::vector<OracleResult> moment_expectation(const Density& p, Moment which,
                                             const QuadratureConfig& cfg) {
  const LogEval lp = curried(p);
  const FamilyDescriptor& fam = p.family();
  std::vector<OracleResult> out;

  if (which == Moment::exp_carrier) {
    auto k = fam.carrier;
    out.push_back(integrate_support(
        fam.support,
        [lp, k](const Vector& x) { return std::exp(k(x) + lp(x)); }, cfg));
    return out;
  }
  if (which == Moment::carrier) {
    auto k = fam.carrier;
    out.push_back(integrate_support(
        fam.support,
        [lp, k](const Vector& x) {
          const double pe = std::exp(lp(x));
          if (pe == 0.0) return 0.0;
          return k(x) * pe;
        },
        cfg));
    return out;
  }

  auto t = fam.sufficient_stat;
  for (int i = 0; i < fam.natural_dim; ++i) {
    out.push_back(integrate_support(
        fam.support,
        [lp, t, i](const Vector& x) {
          const double pe = std::exp(lp(x));
          if (pe == 0.0) return 0.0;
          return t(x)[i] * pe;
        },
        cfg));
  }
  return out;
}

}  // namespace onicescu::oracle
