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

// Command-line front end for the informational-energy library.
//
//   onicescu energy  --family exponential --params lambda=2
//   onicescu csd     --family normal --params mu=0,sigma=1 \
//                    --params2 mu=2,sigma=1
//   onicescu verify  --family all
//   onicescu table   --row gamma:alpha=0.4,beta=1
//
// Exit codes: 0 success, 1 usage error (bad flags, bad parameters, family
// mismatch), 2 domain violation (the requested quantity does not exist
// there: divergent energy, nonzero carrier on an omega route), 3 quadrature
// or series not converged, 4 verification tolerance exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "onicescu/catalog.hpp"
#include "onicescu/measures.hpp"
#include "onicescu/oracle.hpp"

namespace {

using json = nlohmann::json;
using namespace onicescu;

// ---------------------------------------------------------------------------
// Small parsing helpers.
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidSourceParam(what + ": cannot parse number from '" + text +
                             "'");
  }
}

/// "a:b:c" -> numbers.
std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  for (const std::string& piece : split(text, ':')) {
    out.push_back(parse_number(trim(piece), what));
  }
  return out;
}

/// "k=v,k=v"; matrix values use ':' between elements and ';' between rows.
std::map<std::string, std::string> parse_keyvals(const std::string& text,
                                                 const std::string& what) {
  std::map<std::string, std::string> out;
  if (trim(text).empty()) {
    throw InvalidSourceParam(what + ": empty parameter list");
  }
  for (const std::string& piece : split(text, ',')) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos) {
      throw InvalidSourceParam(what + ": expected key=value, got '" + piece +
                               "'");
    }
    const std::string key = trim(piece.substr(0, eq));
    if (out.count(key)) {
      throw InvalidSourceParam(what + ": duplicate key '" + key + "'");
    }
    out[key] = trim(piece.substr(eq + 1));
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

// ---------------------------------------------------------------------------
// Family parameter surface: source coordinates by key, per family.
// ---------------------------------------------------------------------------

struct ParsedFamily {
  CatalogEntry entry;
  Vector source_coords;
  std::map<std::string, std::string> raw;  // echoed back into documents
};

void require_keys(const std::map<std::string, std::string>& kv,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& family) {
  for (const auto& k : required) {
    if (!kv.count(k)) {
      throw InvalidSourceParam(family + ": missing parameter '" + k + "'");
    }
  }
  for (const auto& [k, v] : kv) {
    (void)v;
    bool known = false;
    for (const auto& r : required) known = known || (k == r);
    for (const auto& o : optional) known = known || (k == o);
    if (!known) {
      std::string keys;
      for (const auto& r : required) keys += (keys.empty() ? "" : ", ") + r;
      for (const auto& o : optional) keys += ", " + o + " (optional)";
      throw InvalidSourceParam(family + ": unknown parameter '" + k +
                               "'; expected " + keys);
    }
  }
}

ParsedFamily parse_family(const std::string& family,
                          const std::string& params) {
  const auto kv = parse_keyvals(params, family);
  if (family == "exponential" || family == "poisson") {
    require_keys(kv, {"lambda"}, {}, family);
    return {make_default_entry(family),
            to_vector({parse_number(kv.at("lambda"), family)}), kv};
  }
  if (family == "normal" || family == "lognormal") {
    require_keys(kv, {"mu", "sigma"}, {}, family);
    return {make_default_entry(family),
            to_vector({parse_number(kv.at("mu"), family),
                       parse_number(kv.at("sigma"), family)}),
            kv};
  }
  if (family == "mvn") {
    require_keys(kv, {"mu", "sigma"}, {}, family);
    const std::vector<double> mu = parse_number_list(kv.at("mu"), "mvn mu");
    const auto rows = split(kv.at("sigma"), ';');
    if (rows.size() != mu.size()) {
      throw InvalidSourceParam("mvn: sigma must have one row per mean entry");
    }
    std::vector<double> coords = mu;
    for (const auto& row : rows) {
      const std::vector<double> r = parse_number_list(row, "mvn sigma");
      if (r.size() != mu.size()) {
        throw InvalidSourceParam("mvn: sigma rows must have " +
                                 std::to_string(mu.size()) + " entries");
      }
      coords.insert(coords.end(), r.begin(), r.end());
    }
    return {make_mvn(static_cast<int>(mu.size())), to_vector(coords), kv};
  }
  if (family == "pareto") {
    require_keys(kv, {"a"}, {"k"}, family);
    const double k =
        kv.count("k") ? parse_number(kv.at("k"), "pareto k") : 1.0;
    return {make_pareto(k), to_vector({parse_number(kv.at("a"), family)}),
            kv};
  }
  if (family == "gamma" || family == "beta") {
    require_keys(kv, {"alpha", "beta"}, {}, family);
    return {make_default_entry(family),
            to_vector({parse_number(kv.at("alpha"), family),
                       parse_number(kv.at("beta"), family)}),
            kv};
  }
  std::string names;
  for (const auto& n : family_names()) names += (names.empty() ? "" : ", ") + n;
  throw InvalidSourceParam("unknown family '" + family + "'; expected one of " +
                           names);
}

Density make_density(const ParsedFamily& pf) {
  return Density(pf.entry.family, pf.entry.family->source(pf.source_coords));
}

// ---------------------------------------------------------------------------
// Output rendering.
// ---------------------------------------------------------------------------

enum class OutputKind { json_doc, csv_doc, text_doc };

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json params_json(const std::map<std::string, std::string>& raw) {
  json j = json::object();
  for (const auto& [k, v] : raw) j[k] = v;
  return j;
}

std::string scalar_csv(const json& doc) {
  std::string out = "command,family,method,value\n";
  out += doc.at("command").get<std::string>() + "," +
         doc.at("family").get<std::string>() + "," +
         doc.at("method").get<std::string>() + "," +
         fmt10(doc.at("value").get<double>()) + "\n";
  return out;
}

std::string scalar_text(const json& doc) {
  std::string out;
  out += "command: " + doc.at("command").get<std::string>() + "\n";
  out += "family:  " + doc.at("family").get<std::string>() + "\n";
  out += "method:  " + doc.at("method").get<std::string>() + "\n";
  out += "value:   " + fmt10(doc.at("value").get<double>()) + "\n";
  if (doc.contains("error_estimate")) {
    out += "error:   " + fmt10(doc.at("error_estimate").get<double>()) + "\n";
  }
  if (doc.contains("notes") && !doc.at("notes").get<std::string>().empty()) {
    out += "notes:   " + doc.at("notes").get<std::string>() + "\n";
  }
  return out;
}

void emit(const json& doc, OutputKind kind,
          const std::string& csv, const std::string& text) {
  if (kind == OutputKind::json_doc) {
    std::cout << doc.dump(2) << "\n";
  } else if (kind == OutputKind::csv_doc) {
    std::cout << csv;
  } else {
    std::cout << text;
  }
}

// ---------------------------------------------------------------------------
// Request assembly.
// ---------------------------------------------------------------------------

struct Cli {
  std::string subcommand;
  std::string family;
  std::string params;
  std::string params2;
  double alpha = 2.0;
  double gamma = 2.0;
  std::string weights;
  std::string components;
  std::string method = "auto";
  std::string omega;
  std::string output = "json";
  bool show_natural = false;

  std::string config_path;
  double abs_tol = -1.0;  // <0 means "not set on the command line"
  double rel_tol = -1.0;
  int max_subdivisions = -1;
  std::string transform;
  double series_cutoff = -1.0;
  long series_max_terms = -1;

  std::string verify_family = "all";
  std::string grid = "default";
  double verify_energy_rtol = 1e-7;
  double verify_entropy_rtol = 1e-6;
  std::vector<std::string> table_rows;
};

oracle::QuadratureConfig load_quadrature_config(const Cli& cli) {
  oracle::QuadratureConfig cfg;

  // File layer: --config wins over ONICESCU_CONFIG; both over built-ins.
  std::string path = cli.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("ONICESCU_CONFIG")) path = env;
  }
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidSourceParam("config: cannot open '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw InvalidSourceParam("config: line " + std::to_string(lineno) +
                                 ": expected key=value");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key == "abs_tol") {
        cfg.abs_tol = parse_number(val, "config abs_tol");
      } else if (key == "rel_tol") {
        cfg.rel_tol = parse_number(val, "config rel_tol");
      } else if (key == "max_subdivisions") {
        cfg.max_subdivisions =
            static_cast<int>(parse_number(val, "config max_subdivisions"));
      } else if (key == "transform") {
        if (val == "log") {
          cfg.half_infinite_transform =
              oracle::QuadratureConfig::Transform::log_substitution;
        } else if (val == "rational") {
          cfg.half_infinite_transform =
              oracle::QuadratureConfig::Transform::rational_map;
        } else {
          throw InvalidSourceParam(
              "config: transform must be 'log' or 'rational'");
        }
      } else if (key == "series_cutoff") {
        cfg.series_term_ratio_cutoff = parse_number(val, "config series_cutoff");
      } else if (key == "series_max_terms") {
        cfg.series_max_terms =
            static_cast<long>(parse_number(val, "config series_max_terms"));
      } else {
        throw InvalidSourceParam("config: unknown key '" + key + "'");
      }
    }
  }

  // Flag layer.
  if (cli.abs_tol >= 0.0) cfg.abs_tol = cli.abs_tol;
  if (cli.rel_tol >= 0.0) cfg.rel_tol = cli.rel_tol;
  if (cli.max_subdivisions >= 0) cfg.max_subdivisions = cli.max_subdivisions;
  if (!cli.transform.empty()) {
    if (cli.transform == "log") {
      cfg.half_infinite_transform =
          oracle::QuadratureConfig::Transform::log_substitution;
    } else if (cli.transform == "rational") {
      cfg.half_infinite_transform =
          oracle::QuadratureConfig::Transform::rational_map;
    } else {
      throw InvalidSourceParam("--transform must be 'log' or 'rational'");
    }
  }
  if (cli.series_cutoff >= 0.0) cfg.series_term_ratio_cutoff = cli.series_cutoff;
  if (cli.series_max_terms >= 0) cfg.series_max_terms = cli.series_max_terms;

  if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0 || cfg.max_subdivisions <= 0 ||
      cfg.series_term_ratio_cutoff <= 0.0 || cfg.series_max_terms <= 0) {
    throw InvalidSourceParam("quadrature settings must be positive");
  }
  return cfg;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::omega_trick: return "omega_trick";
    case Method::oracle: return "oracle";
  }
  return "closed_form";
}

Vector pick_omega(const Cli& cli, const FamilyDescriptor& family) {
  if (cli.omega.empty()) return family.omega_points.front();
  return to_vector(parse_number_list(cli.omega, "--omega"));
}

json natural_json(const Density& p) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < p.theta().size(); ++i) arr.push_back(p.theta()[i]);
  return arr;
}

// ---------------------------------------------------------------------------
// Scalar subcommands.
// ---------------------------------------------------------------------------

struct ScalarResult {
  double value = 0.0;
  std::string method;
  std::string notes;
  std::optional<double> error_estimate;
  std::optional<long> evaluations;
};

std::string omega_note(const Vector& w) {
  std::string out = "omega = (";
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += fmt10(w[i]);
  }
  return out + ")";
}

ScalarResult run_energy(const Cli& cli, const Density& p,
                        const oracle::QuadratureConfig& cfg) {
  if (cli.method == "omega") {
    const Vector w = pick_omega(cli, p.family());
    return {energy_omega(p, w), "omega_trick", omega_note(w), {}, {}};
  }
  if (cli.method == "oracle") {
    const auto r = oracle::integrate_product(p, p, cfg);
    oracle::require_converged(r, "energy integral");
    return {r.value, "oracle", "", r.error_estimate, r.evaluations};
  }
  const MeasureReport r = energy(p);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

ScalarResult run_cross(const Cli& cli, const Density& p, const Density& q,
                       const oracle::QuadratureConfig& cfg) {
  if (cli.method == "omega") {
    const Vector w = pick_omega(cli, p.family());
    return {cross_energy_omega(p, q, w), "omega_trick", omega_note(w), {}, {}};
  }
  if (cli.method == "oracle") {
    const auto r = oracle::integrate_product(p, q, cfg);
    oracle::require_converged(r, "cross energy integral");
    return {r.value, "oracle", "", r.error_estimate, r.evaluations};
  }
  const MeasureReport r = cross_energy(p, q);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

ScalarResult run_rho_or_csd(const Cli& cli, const Density& p,
                            const Density& q,
                            const oracle::QuadratureConfig& cfg, bool csd) {
  if (cli.method == "omega") {
    const Vector w = pick_omega(cli, p.family());
    const double v =
        csd ? cauchy_schwarz_omega(p, q, w) : correlation_omega(p, q, w);
    return {v, "omega_trick", omega_note(w), {}, {}};
  }
  if (cli.method == "oracle") {
    const auto ipq = oracle::integrate_product(p, q, cfg);
    const auto ipp = oracle::integrate_product(p, p, cfg);
    const auto iqq = oracle::integrate_product(q, q, cfg);
    oracle::require_converged(ipq, "cross energy integral");
    oracle::require_converged(ipp, "energy integral");
    oracle::require_converged(iqq, "energy integral");
    const double rho = ipq.value / std::sqrt(ipp.value * iqq.value);
    const double rel = ipq.error_estimate / ipq.value +
                       0.5 * ipp.error_estimate / ipp.value +
                       0.5 * iqq.error_estimate / iqq.value;
    const long evals = ipq.evaluations + ipp.evaluations + iqq.evaluations;
    if (csd) return {-std::log(rho), "oracle", "", rel, evals};
    return {rho, "oracle", "", rho * rel, evals};
  }
  const MeasureReport r = csd ? cauchy_schwarz(p, q) : correlation(p, q);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

ScalarResult run_holder(const Cli& cli, const Density& p, const Density& q,
                        const oracle::QuadratureConfig& cfg) {
  if (cli.method == "omega") {
    const Vector w = pick_omega(cli, p.family());
    return {holder_omega(p, q, cli.alpha, cli.gamma, w), "omega_trick",
            omega_note(w), {}, {}};
  }
  if (cli.method == "oracle") {
    const double beta = cli.alpha / (cli.alpha - 1.0);
    const auto mixed = oracle::integrate_power_product(
        p, q, cli.gamma / cli.alpha, cli.gamma / beta, cfg);
    const auto ip = oracle::integrate_power_product(p, p, cli.gamma / 2.0,
                                                    cli.gamma / 2.0, cfg);
    const auto iq = oracle::integrate_power_product(q, q, cli.gamma / 2.0,
                                                    cli.gamma / 2.0, cfg);
    oracle::require_converged(mixed, "mixed power integral");
    oracle::require_converged(ip, "p power integral");
    oracle::require_converged(iq, "q power integral");
    const double v = -std::log(mixed.value) + std::log(ip.value) / cli.alpha +
                     std::log(iq.value) / beta;
    const double err = mixed.error_estimate / mixed.value +
                       ip.error_estimate / (cli.alpha * ip.value) +
                       iq.error_estimate / (beta * iq.value);
    return {v, "oracle", "",
            err, mixed.evaluations + ip.evaluations + iq.evaluations};
  }
  const MeasureReport r = holder(p, q, cli.alpha, cli.gamma);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

ScalarResult run_entropy(const Cli& cli, const Density& p,
                         const oracle::QuadratureConfig& cfg) {
  if (cli.method == "omega") {
    throw InvalidSourceParam("entropy has no omega route; use closed/oracle");
  }
  if (cli.method == "oracle") {
    const auto r = oracle::entropy_integral(p, cfg);
    oracle::require_converged(r, "entropy integral");
    return {r.value, "oracle", "", r.error_estimate, r.evaluations};
  }
  const MeasureReport r = shannon_entropy(p);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

ScalarResult run_jensen(const Cli& cli, const Density& p, const Density& q,
                        const oracle::QuadratureConfig& cfg) {
  if (cli.method == "omega") {
    throw InvalidSourceParam(
        "jensen has no omega route; use closed/oracle");
  }
  if (cli.method == "oracle") {
    const auto ipp = oracle::integrate_product(p, p, cfg);
    const auto iqq = oracle::integrate_product(q, q, cfg);
    const auto ipq = oracle::integrate_product(p, q, cfg);
    oracle::require_converged(ipp, "p square integral");
    oracle::require_converged(iqq, "q square integral");
    oracle::require_converged(ipq, "pq integral");
    const double v = 0.25 * (ipp.value + iqq.value - 2.0 * ipq.value);
    const double err = 0.25 * (ipp.error_estimate + iqq.error_estimate +
                               2.0 * ipq.error_estimate);
    return {v, "oracle", "",
            err, ipp.evaluations + iqq.evaluations + ipq.evaluations};
  }
  const MeasureReport r = energy_jensen_divergence(p, q);
  return {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
}

// ---------------------------------------------------------------------------
// mixture subcommand.
// ---------------------------------------------------------------------------

int run_mixture(const Cli& cli, const oracle::QuadratureConfig& cfg,
                OutputKind out) {
  if (cli.family.empty() || cli.weights.empty() || cli.components.empty()) {
    throw InvalidSourceParam(
        "mixture requires --family, --weights, --components");
  }
  if (cli.method == "omega") {
    throw InvalidSourceParam("mixture has no omega route; use closed/oracle");
  }
  std::vector<double> weights;
  for (const auto& piece : split(cli.weights, ',')) {
    weights.push_back(parse_number(trim(piece), "--weights"));
  }
  std::vector<Density> comps;
  json comp_json = json::array();
  for (const auto& piece : split(cli.components, '|')) {
    const ParsedFamily pf = parse_family(cli.family, piece);
    comps.push_back(make_density(pf));
    comp_json.push_back(params_json(pf.raw));
  }

  ScalarResult res;
  if (cli.method == "oracle") {
    const auto r = oracle::integrate_mixture_square(weights, comps, cfg);
    oracle::require_converged(r, "mixture square integral");
    res = {r.value, "oracle", "", r.error_estimate, r.evaluations};
  } else {
    const MeasureReport r = mixture_energy(Mixture(weights, comps));
    res = {r.value, method_name(r.method), r.notes, r.error_estimate, {}};
  }

  json doc;
  doc["command"] = "mixture";
  doc["family"] = comps.front().family().tag;
  doc["inputs"] = {{"weights", weights}, {"components", comp_json}};
  doc["method"] = res.method;
  doc["value"] = res.value;
  doc["valid"] = true;
  if (!res.notes.empty()) doc["notes"] = res.notes;
  if (res.error_estimate) doc["error_estimate"] = *res.error_estimate;
  if (res.evaluations) doc["evaluations"] = *res.evaluations;
  emit(doc, out, scalar_csv(doc), scalar_text(doc));
  return 0;
}

// ---------------------------------------------------------------------------
// verify subcommand.
// ---------------------------------------------------------------------------

int run_verify(const Cli& cli, const oracle::QuadratureConfig& cfg,
               OutputKind out) {
  if (cli.grid != "default") {
    throw InvalidSourceParam("verify: only --grid default is available");
  }
  if (cli.verify_energy_rtol <= 0.0 || cli.verify_entropy_rtol <= 0.0) {
    throw InvalidSourceParam("verify tolerances must be positive");
  }
  std::vector<std::string> names;
  if (cli.verify_family == "all") {
    names = family_names();
  } else {
    names = {cli.verify_family};
    (void)make_default_entry(cli.verify_family);  // validates the name
  }
  bool all_pass = true;
  json fams = json::array();
  std::string csv =
      "family,params,I_closed,I_oracle,delta_I,H_closed,H_oracle,delta_H,"
      "pass\n";
  std::string text;

  for (const auto& name : names) {
    const CatalogEntry entry = make_default_entry(name);
    json points = json::array();
    for (const Vector& s : default_source_grid(name)) {
      const Density p(entry.family, entry.family->source(s));
      const double closed_i = entry.closed_form_energy(s);
      const double oracle_i = oracle::require_converged(
          oracle::integrate_product(p, p, cfg), "energy integral");
      const double closed_h = entry.closed_form_entropy(s);
      const double oracle_h = oracle::require_converged(
          oracle::entropy_integral(p, cfg), "entropy integral");
      const double di = std::abs(closed_i - oracle_i);
      const double dh = std::abs(closed_h - oracle_h);
      // Entropy tolerance carries an absolute floor: H crosses zero on
      // ordinary parameter grids, a pure relative test would be vacuous.
      const bool pass = di <= cli.verify_energy_rtol * std::abs(oracle_i) &&
                        dh <= cli.verify_entropy_rtol *
                                  std::max(1.0, std::abs(oracle_h));
      all_pass = all_pass && pass;

      std::string params;
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (i) params += ";";
        params += fmt10(s[i]);
      }
      json row;
      row["params"] = params;
      row["I_closed"] = closed_i;
      row["I_oracle"] = oracle_i;
      row["delta_I"] = di;
      row["H_closed"] = closed_h;
      row["H_oracle"] = oracle_h;
      row["delta_H"] = dh;
      row["pass"] = pass;
      points.push_back(row);
      csv += name + "," + params + "," + fmt10(closed_i) + "," +
             fmt10(oracle_i) + "," + fmt10(di) + "," + fmt10(closed_h) + "," +
             fmt10(oracle_h) + "," + fmt10(dh) + "," +
             (pass ? "true" : "false") + "\n";
      text += name + "(" + params + "): |dI| = " + fmt10(di) +
              ", |dH| = " + fmt10(dh) + (pass ? "" : "  <-- FAIL") + "\n";
    }

    json fam;
    fam["family"] = name;
    fam["points"] = points;

    if (name == "beta") {
      // The widely printed closed-form expression for the Beta energy is
      // checked on purpose: it disagrees with quadrature at (2,2) while the
      // implemented form agrees. Informational, never a failure.
      const Vector s2 = to_vector({2.0, 2.0});
      const Density b22(entry.family, entry.family->source(s2));
      const double literal = beta_energy_table_literal(2.0, 2.0);
      const double brute = oracle::require_converged(
          oracle::integrate_product(b22, b22, cfg), "beta energy integral");
      json disc;
      disc["params"] = "alpha=2,beta=2";
      disc["printed_table_expression"] = literal;
      disc["implemented_form"] = entry.closed_form_energy(s2);
      disc["oracle"] = brute;
      disc["expected_discrepancy"] = true;
      disc["printed_expression_disagrees"] = std::abs(literal - brute) > 1.0;
      fam["expected_discrepancies"] = json::array({disc});
      text += "beta(alpha=2,beta=2): printed table expression " +
              fmt10(literal) + " vs oracle " + fmt10(brute) +
              " (expected discrepancy; implemented form " +
              fmt10(entry.closed_form_energy(s2)) + ")\n";
      csv += "beta,alpha=2;beta=2(printed-expression)," + fmt10(literal) +
             "," + fmt10(brute) + "," + fmt10(std::abs(literal - brute)) +
             ",,,,expected_discrepancy\n";
    }
    fams.push_back(fam);
  }

  json doc;
  doc["command"] = "verify";
  doc["families"] = fams;
  doc["pass"] = all_pass;
  text += std::string("overall: ") + (all_pass ? "pass" : "FAIL") + "\n";
  emit(doc, out, csv, text);
  return all_pass ? 0 : 4;
}

// ---------------------------------------------------------------------------
// table subcommand.
// ---------------------------------------------------------------------------

int run_table(const Cli& cli, const oracle::QuadratureConfig& cfg,
              OutputKind out) {
  struct RowSpec {
    std::string family;
    std::string params;
  };
  std::vector<RowSpec> rows;
  auto default_params = [](const std::string& name) {
    const Vector s = default_source_point(name);
    if (name == "exponential" || name == "poisson") {
      return "lambda=" + fmt10(s[0]);
    }
    if (name == "normal" || name == "lognormal") {
      return "mu=" + fmt10(s[0]) + ",sigma=" + fmt10(s[1]);
    }
    if (name == "mvn") {  // d = 2 default point
      return std::string("mu=") + fmt10(s[0]) + ":" + fmt10(s[1]) +
             ",sigma=" + fmt10(s[2]) + ":" + fmt10(s[3]) + ";" + fmt10(s[4]) +
             ":" + fmt10(s[5]);
    }
    if (name == "pareto") return "a=" + fmt10(s[0]) + ",k=1";
    return "alpha=" + fmt10(s[0]) + ",beta=" + fmt10(s[1]);  // gamma, beta
  };
  for (const auto& name : family_names()) {
    rows.push_back({name, default_params(name)});
  }
  for (const auto& extra : cli.table_rows) {
    const auto colon = extra.find(':');
    if (colon == std::string::npos) {
      throw InvalidSourceParam("--row expects family:key=value,...");
    }
    rows.push_back({trim(extra.substr(0, colon)), extra.substr(colon + 1)});
  }

  json jrows = json::array();
  std::string csv =
      "family,params,H_closed,I_closed,H_oracle,I_oracle,delta_H,delta_I\n";
  std::string text;
  for (const auto& spec : rows) {
    const ParsedFamily pf = parse_family(spec.family, spec.params);
    const Density p = make_density(pf);
    json row;
    row["family"] = pf.entry.family->tag;
    row["params"] = spec.params;

    const double closed_h = pf.entry.closed_form_entropy(pf.source_coords);
    const double oracle_h = oracle::require_converged(
        oracle::entropy_integral(p, cfg), "entropy integral");
    row["H_closed"] = closed_h;
    row["H_oracle"] = oracle_h;
    row["delta_H"] = std::abs(closed_h - oracle_h);

    std::string i_closed_txt, i_oracle_txt, di_txt;
    try {
      const double closed_i = pf.entry.closed_form_energy(pf.source_coords);
      const double oracle_i = oracle::require_converged(
          oracle::integrate_product(p, p, cfg), "energy integral");
      row["I_closed"] = closed_i;
      row["I_oracle"] = oracle_i;
      row["delta_I"] = std::abs(closed_i - oracle_i);
      i_closed_txt = fmt10(closed_i);
      i_oracle_txt = fmt10(oracle_i);
      di_txt = fmt10(std::abs(closed_i - oracle_i));
    } catch (const DomainViolation&) {
      // The defining integral diverges for these parameters; the row stays,
      // the energy columns say why.
      row["I_closed"] = nullptr;
      row["I_oracle"] = nullptr;
      row["delta_I"] = nullptr;
      row["error"] = "EnergyUndefined";
      i_closed_txt = i_oracle_txt = di_txt = "EnergyUndefined";
    }
    jrows.push_back(row);
    csv += row["family"].get<std::string>() + ",\"" + spec.params + "\"," +
           fmt10(closed_h) + "," + i_closed_txt + "," + fmt10(oracle_h) +
           "," + i_oracle_txt + "," +
           fmt10(std::abs(closed_h - oracle_h)) + "," + di_txt + "\n";
    text += row["family"].get<std::string>() + " (" + spec.params +
            "): H = " + fmt10(closed_h) + ", I = " + i_closed_txt + "\n";
  }

  json doc;
  doc["command"] = "table";
  doc["rows"] = jrows;
  emit(doc, out, csv, text);
  return 0;
}

// ---------------------------------------------------------------------------
// main dispatch.
// ---------------------------------------------------------------------------

int dispatch(const Cli& cli) {
  OutputKind out;
  if (cli.output == "json") {
    out = OutputKind::json_doc;
  } else if (cli.output == "csv") {
    out = OutputKind::csv_doc;
  } else if (cli.output == "text") {
    out = OutputKind::text_doc;
  } else {
    throw InvalidSourceParam("--output must be json, csv, or text");
  }
  if (cli.method != "auto" && cli.method != "closed" &&
      cli.method != "omega" && cli.method != "oracle") {
    throw InvalidSourceParam("--method must be auto, closed, omega, or oracle");
  }

  const oracle::QuadratureConfig cfg = load_quadrature_config(cli);

  if (cli.subcommand == "verify") return run_verify(cli, cfg, out);
  if (cli.subcommand == "table") return run_table(cli, cfg, out);
  if (cli.subcommand == "mixture") return run_mixture(cli, cfg, out);

  if (cli.family.empty() || cli.params.empty()) {
    throw InvalidSourceParam(cli.subcommand +
                             " requires --family and --params");
  }
  const ParsedFamily pf = parse_family(cli.family, cli.params);
  const Density p = make_density(pf);

  const bool pairwise = cli.subcommand == "cross" || cli.subcommand == "rho" ||
                        cli.subcommand == "csd" ||
                        cli.subcommand == "holder" ||
                        cli.subcommand == "jensen";
  std::optional<ParsedFamily> pf2;
  std::optional<Density> q;
  if (pairwise) {
    if (cli.params2.empty()) {
      throw InvalidSourceParam(cli.subcommand + " requires --params2");
    }
    pf2 = parse_family(cli.family, cli.params2);
    q = make_density(*pf2);
  }

  ScalarResult res;
  if (cli.subcommand == "energy") {
    res = run_energy(cli, p, cfg);
  } else if (cli.subcommand == "cross") {
    res = run_cross(cli, p, *q, cfg);
  } else if (cli.subcommand == "rho") {
    res = run_rho_or_csd(cli, p, *q, cfg, false);
  } else if (cli.subcommand == "csd") {
    res = run_rho_or_csd(cli, p, *q, cfg, true);
  } else if (cli.subcommand == "holder") {
    res = run_holder(cli, p, *q, cfg);
  } else if (cli.subcommand == "entropy") {
    res = run_entropy(cli, p, cfg);
  } else if (cli.subcommand == "jensen") {
    res = run_jensen(cli, p, *q, cfg);
  } else {
    throw InvalidSourceParam("unknown subcommand '" + cli.subcommand + "'");
  }

  json doc;
  doc["command"] = cli.subcommand;
  doc["family"] = pf.entry.family->tag;
  json inputs;
  inputs["params"] = params_json(pf.raw);
  if (pf2) inputs["params2"] = params_json(pf2->raw);
  if (cli.subcommand == "holder") {
    inputs["alpha"] = cli.alpha;
    inputs["gamma"] = cli.gamma;
  }
  doc["inputs"] = inputs;
  doc["method"] = res.method;
  doc["value"] = res.value;
  doc["valid"] = true;
  if (!res.notes.empty()) doc["notes"] = res.notes;
  if (res.error_estimate) doc["error_estimate"] = *res.error_estimate;
  if (res.evaluations) doc["evaluations"] = *res.evaluations;
  if (cli.show_natural) {
    doc["natural"] = natural_json(p);
    if (q) doc["natural2"] = natural_json(*q);
  }
  emit(doc, out, scalar_csv(doc), scalar_text(doc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{
      "Closed-form informational energy, correlation, Cauchy-Schwarz and "
      "Hoelder divergences for exponential families, with a quadrature "
      "oracle"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--family", cli.family, "family name");
  app.add_option("--params", cli.params,
                 "source parameters, key=value comma separated");
  app.add_option("--params2", cli.params2, "second density's parameters");
  app.add_option("--alpha", cli.alpha, "Hoelder exponent alpha > 1");
  app.add_option("--gamma", cli.gamma, "Hoelder power gamma > 0");
  app.add_option("--weights", cli.weights, "mixture weights, comma separated");
  app.add_option("--components", cli.components,
                 "mixture components, '|' separated parameter lists");
  app.add_option("--method", cli.method, "auto|closed|omega|oracle");
  app.add_option("--omega", cli.omega,
                 "support point for the omega route, ':' separated");
  app.add_option("--output", cli.output, "json|csv|text");
  app.add_flag("--show-natural", cli.show_natural,
               "include natural parameters in the document");
  app.add_option("--config", cli.config_path,
                 "key=value config file (also: ONICESCU_CONFIG)");
  app.add_option("--abs-tol", cli.abs_tol, "quadrature absolute tolerance");
  app.add_option("--rel-tol", cli.rel_tol, "quadrature relative tolerance");
  app.add_option("--max-subdivisions", cli.max_subdivisions,
                 "quadrature panel budget");
  app.add_option("--transform", cli.transform,
                 "half-infinite transform: log|rational");
  app.add_option("--series-cutoff", cli.series_cutoff,
                 "lattice series term-ratio cutoff");
  app.add_option("--series-max-terms", cli.series_max_terms,
                 "lattice series term cap");

  for (const char* name : {"energy", "cross", "rho", "csd", "holder",
                           "entropy", "jensen", "mixture"}) {
    app.add_subcommand(name, "");
  }
  auto* verify = app.add_subcommand("verify", "closed forms against the oracle");
  verify->add_option("--family", cli.verify_family, "family name or 'all'");
  verify->add_option("--grid", cli.grid, "verification grid (default)");
  verify->add_option("--energy-rtol", cli.verify_energy_rtol,
                     "relative tolerance for closed vs oracle energy");
  verify->add_option("--entropy-rtol", cli.verify_entropy_rtol,
                     "tolerance for closed vs oracle entropy");
  auto* table = app.add_subcommand("table", "per-family summary table");
  table->add_option("--row", cli.table_rows,
                    "extra row, family:key=value,... (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // every flag-level mistake is a usage error
  }

  cli.subcommand = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cli);
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what()
              << " (best estimate " << fmt10(e.best_estimate)
              << ", error bound " << fmt10(e.error_bound) << ")\n";
    return 3;
  } catch (const DomainViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CarrierNotZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidSourceParam& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const FamilyMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
