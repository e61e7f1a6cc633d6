// Copyright 2026 The crext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crext/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crext/errors.hpp"
#include "crext/extend.hpp"
#include "crext/leafcauchy.hpp"
#include "crext/moments.hpp"
#include "crext/quadric.hpp"

namespace crext::cli {

using io::json;

namespace {

constexpr int kVerificationSamples = 64;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const std::string& path) {
  return io::parse_document(read_input(path), path == "-" ? "<stdin>" : path);
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("input: missing field \"") + key + "\"");
  }
  return doc[key];
}

json optional_double(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json polynomial_text_and_terms(const Polynomial& p) {
  return {{"text", to_string(p)}, {"terms", io::polynomial_to_json(p)}};
}

BoundaryData data_from_json(const json& j) {
  if (j.is_string()) return builtin_data(j.get<std::string>());
  if (j.is_object() && j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw InputError("data.builtin: expected a string");
    const Complex c = j.contains("value") ? io::complex_from_json(j["value"], "data.value") : Complex(1.0);
    return builtin_data(j["builtin"].get<std::string>(), c);
  }
  return polynomial_data(io::polynomial_from_json(j, "data"));
}

LeafFamily family_from_json(const json& j) {
  if (!j.is_object()) throw InputError("family: expected an object");
  const std::string type = j.value("type", "quadric");
  if (type == "quadric") return quadric_family(io::model_from_json(require(j, "model"), "family.model"));
  if (type == "radial-power") {
    const json& p = require(j, "power");
    if (!p.is_number_integer() || p.get<int>() < 1) throw InputError("family.power: expected a positive integer");
    return radial_power_family(p.get<int>());
  }
  throw InputError("family.type: unknown family '" + type + "'");
}

std::vector<double> ladder_from_json(const json& doc) {
  if (!doc.contains("ladder")) return geometric_ladder(1e-4, 2.0, 8);
  const json& l = doc["ladder"];
  if (l.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_number()) throw InputError("ladder[" + std::to_string(i) + "]: expected a number");
      out.push_back(l[i].get<double>());
    }
    return out;
  }
  if (!l.is_object()) throw InputError("ladder: expected an array or {s0, ratio, rungs}");
  return geometric_ladder(l.value("s0", 1e-4), l.value("ratio", 2.0), l.value("rungs", 8));
}

json cmd_classify(const json& doc) {
  const QuadricModel model = io::model_from_json(doc.contains("model") ? doc["model"] : doc);
  const ClassificationReport rep = classify(model);
  json out;
  out["classification"] = to_string(rep.classification);
  out["lambdas"] = rep.lambdas;
  out["note"] = rep.note;
  out["nondegeneracy"] = {{"nondegenerate", rep.nondegeneracy.nondegenerate},
                          {"smallest_singular_value", rep.nondegeneracy.smallest_singular_value},
                          {"largest_singular_value", rep.nondegeneracy.largest_singular_value}};
  out["elliptic_oracle"] = ellipticity_oracle(model);
  if (rep.normal_form) {
    out["T"] = io::matrix_to_json(rep.normal_form->T);
    out["residuals"] = {{"hermitian", rep.normal_form->hermitian_residual},
                        {"congruence", rep.normal_form->congruence_residual}};
    out["delta_z"] = default_delta_z(model);
  } else {
    out["T"] = nullptr;
    out["residuals"] = nullptr;
  }
  return out;
}

json certificate_to_json(const Certificate& c) {
  json out = {{"degree", c.degree}, {"residual", c.residual}, {"condition", c.condition}};
  if (c.offending) out["offending"] = {c.offending->first, c.offending->second};
  if (c.involution_deviation) out["involution_deviation"] = *c.involution_deviation;
  if (c.cr_pair) {
    out["cr_field"] = {{"j", c.cr_pair->first + 1},
                       {"l", c.cr_pair->second + 1},
                       {"value", polynomial_text_and_terms(*c.cr_value)}};
  }
  return out;
}

json cmd_extend(const json& doc, const RunConfig& cfg) {
  const QuadricModel model = io::model_from_json(require(doc, "model"));
  const Polynomial f = io::polynomial_from_json(require(doc, "f"), "f");
  const ExtensionResult res = extend_general(f, model, cfg.tol_extend);

  json out;
  out["status"] = to_string(res.status);
  out["residual"] = res.residual;
  out["threshold"] = res.threshold;
  json degrees = json::array();
  for (const DegreeSolve& d : res.degrees) {
    degrees.push_back({{"degree", d.degree},
                       {"unknowns", d.unknowns},
                       {"equations", d.equations},
                       {"residual", d.residual},
                       {"condition_number", optional_double(d.condition_number)},
                       {"conditioning_warning", d.conditioning_warning}});
  }
  out["degrees"] = degrees;
  if (res.P) {
    out["P"] = to_string(*res.P);
    out["P_terms"] = io::polynomial_to_json(*res.P);
    out["verification"] = {{"samples", kVerificationSamples},
                           {"max_error", verify_extension(*res.P, f, model, kVerificationSamples, cfg.seed)}};
  } else {
    out["P"] = nullptr;
    out["P_terms"] = nullptr;
  }
  out["certificate"] = res.certificate ? certificate_to_json(*res.certificate) : json(nullptr);
  return out;
}

json cmd_check(const json& doc, const RunConfig& cfg) {
  const QuadricModel model = io::model_from_json(require(doc, "model"));
  const Polynomial f = io::polynomial_from_json(require(doc, "f"), "f");
  json out;
  if (model.n >= 2) {
    const std::vector<CrViolation> v = cr_check(f, model);
    out["kind"] = "cr";
    out["cr"] = v.empty();
    json list = json::array();
    for (const CrViolation& x : v) {
      list.push_back({{"j", x.j + 1}, {"l", x.l + 1}, {"value", polynomial_text_and_terms(x.value)}});
    }
    out["violations"] = list;
    return out;
  }

  std::vector<double> leaves = cfg.leaves;
  if (doc.contains("leaves")) {
    leaves.clear();
    for (const auto& r : doc["leaves"]) {
      if (!r.is_number()) throw InputError("leaves: expected numbers");
      leaves.push_back(r.get<double>());
    }
  }
  if (leaves.empty()) leaves = default_leaf_ladder(model);
  int lmax = -1;
  if (doc.contains("Lmax")) {
    if (!doc["Lmax"].is_number_integer()) throw InputError("Lmax: expected an integer");
    lmax = doc["Lmax"].get<int>();
  }
  double tol = cfg.tol_moment;
  if (doc.contains("tol")) {
    if (!doc["tol"].is_number()) throw InputError("tol: expected a number");
    tol = doc["tol"].get<double>();
  }

  json leaf_info = json::array();
  for (double r : leaves) {
    const LeafParametrization leaf = solve_leaf(model, r, cfg.grid_n);
    const double residual = leaf.residual();
    if (residual > cfg.tol_leaf) {
      throw NumericalFailure("leaf r = " + std::to_string(r) + " residual " + std::to_string(residual) +
                             " exceeds tol_leaf");
    }
    leaf_info.push_back({{"r", r}, {"residual", residual}, {"inradius", leaf.inradius()}});
  }

  const MomentReport rep = check_moments(f, model, leaves, lmax, tol, cfg.grid_n);
  out["kind"] = "moments";
  out["pass"] = rep.pass;
  out["max_modulus"] = rep.max_modulus;
  out["tolerance"] = rep.tolerance;
  out["lmax"] = rep.lmax;
  out["grid_n"] = rep.grid_size;
  out["leaves"] = leaf_info;
  json entries = json::array();
  for (const MomentEntry& e : rep.entries) {
    entries.push_back({{"r", e.r}, {"ell", e.ell}, {"re", e.value.real()}, {"im", e.value.imag()},
                       {"modulus", std::abs(e.value)}});
  }
  out["entries"] = entries;
  return out;
}

json cmd_leaf_extend(const json& doc, const RunConfig& cfg) {
  const QuadricModel model = io::model_from_json(require(doc, "model"));
  const BoundaryData data = data_from_json(require(doc, "data"));
  const json& jl = require(doc, "leaf");
  double r = 0.0;
  if (jl.is_number()) {
    r = jl.get<double>();
  } else if (jl.is_object() && jl.contains("r")) {
    r = io::complex_from_json(jl["r"], "leaf.r").real();
  } else if (jl.is_object() && jl.contains("s")) {
    r = std::sqrt(io::complex_from_json(jl["s"], "leaf.s").real());
  } else {
    throw InputError("leaf: expected a number, {\"r\": ...} or {\"s\": ...}");
  }
  const json& jp = require(doc, "points");
  if (!jp.is_array()) throw InputError("points: expected an array");
  std::vector<Complex> points;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    points.push_back(io::complex_from_json(jp[i], "points[" + std::to_string(i) + "]"));
  }

  const LeafParametrization leaf = solve_leaf(model, r, cfg.grid_n);
  const LeafExtension ext = cauchy_extend(data, leaf, points);
  json values = json::array();
  for (const auto& [z, F] : ext.interior_values) {
    values.push_back({{"z", io::complex_to_json(z)}, {"F", io::complex_to_json(F)}});
  }
  return {{"data", data.description},
          {"leaf", {{"r", leaf.r}, {"level", leaf.level}, {"inradius", leaf.inradius()}, {"residual", leaf.residual()}}},
          {"values", values},
          {"boundary_sup_error", ext.boundary_sup_error}};
}

json cmd_probe_degenerate(const json& doc, const RunConfig& cfg) {
  const LeafFamily family = family_from_json(require(doc, "family"));
  const BoundaryData data = data_from_json(require(doc, "data"));
  const std::vector<double> ladder = ladder_from_json(doc);

  const NormalDerivativeReport nd = normal_derivative_probe(data, family, ladder, cfg.grid_n);
  json rungs = json::array();
  for (std::size_t i = 0; i < nd.levels.size(); ++i) {
    json row = {{"s", nd.levels[i]}, {"F0", io::complex_to_json(nd.values[i])}};
    if (i > 0 && i + 1 < nd.levels.size()) row["Fs_abs"] = nd.fs_magnitude[i - 1];
    rungs.push_back(row);
  }

  json continuity = json::array();
  for (const ContinuityRow& row : continuity_probe(data, family, ladder, std::nullopt, cfg.grid_n)) {
    continuity.push_back({{"s", row.level}, {"r", row.radius}, {"sup", row.sup_deviation}});
  }

  json zderiv = json::array();
  bool all_hold = true;
  for (double s : ladder) {
    const double in = family.leaf(s, cfg.grid_n).inradius();
    std::vector<Complex> samples{0.0};
    for (int k = 0; k < 4; ++k) samples.push_back(std::polar(0.3 * in, k * std::acos(-1.0) / 2));
    const ZDerivativeBound b = zderiv_bound_check(data, family, s, samples, cfg.grid_n);
    all_hold = all_hold && b.holds;
    zderiv.push_back({{"s", s}, {"holds", b.holds}, {"max_interior", b.max_interior},
                      {"bound", b.bound}, {"margin", b.margin}});
  }

  return {{"family", family.name},
          {"data", data.description},
          {"exponent", nd.exponent},
          {"verdict", nd.bounded ? "bounded (~0)" : "power law"},
          {"bounded", nd.bounded},
          {"rungs", rungs},
          {"continuity", continuity},
          {"zderiv", {{"holds", all_hold}, {"per_level", zderiv}}}};
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void RunConfig::validate() const {
  if (!(tol_extend > 0.0) || !(tol_moment > 0.0) || !(tol_leaf > 0.0)) {
    throw InputError("config: tolerances must be positive");
  }
  if (grid_n < 64 || grid_n > 4096 || !is_power_of_two(grid_n)) {
    throw InputError("config: grid_n must be a power of two in [64, 4096]");
  }
  for (double r : leaves) {
    if (!(r > 0.0)) throw InputError("config: leaves must be positive");
  }
}

json config_to_json(const RunConfig& c) {
  return {{"tol_extend", c.tol_extend}, {"tol_moment", c.tol_moment}, {"tol_leaf", c.tol_leaf},
          {"grid_n", c.grid_n},         {"leaves", c.leaves},         {"seed", c.seed},
          {"out", c.out}};
}

void apply_config_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw InputError("config: expected an object");
  auto num = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw InputError(std::string("config.") + key + ": expected a number");
    dst = j[key].get<double>();
  };
  num("tol_extend", c.tol_extend);
  num("tol_moment", c.tol_moment);
  num("tol_leaf", c.tol_leaf);
  if (j.contains("grid_n")) {
    if (!j["grid_n"].is_number_integer()) throw InputError("config.grid_n: expected an integer");
    c.grid_n = j["grid_n"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("config.seed: expected an unsigned integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("leaves")) {
    c.leaves.clear();
    for (const auto& r : j["leaves"]) {
      if (!r.is_number()) throw InputError("config.leaves: expected numbers");
      c.leaves.push_back(r.get<double>());
    }
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw InputError("config.out: expected a string");
    c.out = j["out"].get<std::string>();
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial and leafwise holomorphic extension across elliptic CR singularities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_extend, tol_moment;
  std::optional<int> grid_n;
  std::string out_path;
  app.add_option("--config", config_path, "JSON file with run configuration");
  app.add_option("--seed", seed, "seed for all sampling");
  app.add_option("--tol-extend", tol_extend, "relative residual tolerance of the graded solves");
  app.add_option("--tol-moment", tol_moment, "absolute tolerance on moment integrals");
  app.add_option("--grid-n", grid_n, "quadrature points per leaf (power of two)");
  app.add_option("--out", out_path, "write the report here instead of standard output");

  struct Sub {
    const char* name;
    const char* help;
    std::string input = "-";
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs = {
      {"classify", "Bishop normal form and classification of a quadric model"},
      {"extend", "holomorphic polynomial extension of polynomial boundary data"},
      {"check", "moment conditions (n = 1) or CR conditions (n >= 2)"},
      {"leaf-extend", "leafwise Cauchy extension at interior points"},
      {"probe-degenerate", "normal-derivative and z-derivative probes along a leaf ladder"},
  };
  for (Sub& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    s.app->add_option("input", s.input, "input JSON document ('-' for standard input)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_json(load(config_path), cfg);
    if (seed) cfg.seed = *seed;
    if (tol_extend) cfg.tol_extend = *tol_extend;
    if (tol_moment) cfg.tol_moment = *tol_moment;
    if (grid_n) cfg.grid_n = *grid_n;
    if (!out_path.empty()) cfg.out = out_path;
    cfg.validate();

    json report;
    for (const Sub& s : subs) {
      if (!s.app->parsed()) continue;
      const json doc = load(s.input);
      const std::string name = s.name;
      if (name == "classify") report = cmd_classify(doc);
      else if (name == "extend") report = cmd_extend(doc, cfg);
      else if (name == "check") report = cmd_check(doc, cfg);
      else if (name == "leaf-extend") report = cmd_leaf_extend(doc, cfg);
      else report = cmd_probe_degenerate(doc, cfg);
      report["command"] = name;
    }
    report["config"] = config_to_json(cfg);

    if (cfg.out.empty()) {
      io::write_json(out, report);
      out << '\n';
    } else {
      std::ofstream file(cfg.out);
      if (!file) throw InputError("cannot open output file '" + cfg.out + "'");
      io::write_json(file, report);
      file << '\n';
    }
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace crext::cli
