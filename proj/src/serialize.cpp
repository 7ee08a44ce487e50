// Copyright 2026 The qsmc Authors
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

#include "qsmc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qsmc {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::parse_error, what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) parse_fail(std::string("missing field '") + name + "'");
  return doc.at(name);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) parse_fail(std::string(what) + " must be a number");
  return v.get<double>();
}

int integer(const Json& v, const char* what) {
  if (!v.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return v.get<int>();
}

Json num(double x) { return round12(x); }

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

Json complex_pair(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Json coefficient_list(const std::vector<Complex>& cs) {
  Json a = Json::array();
  for (Complex c : cs) a.push_back({{"re", num(c.real())}, {"im", num(c.imag())}});
  return a;
}

Json mesh_to_json(const ReckMesh& mesh, int stage) {
  Json layers = Json::array();
  for (const MeshLayer& l : mesh.layers) {
    layers.push_back({{"modes", {l.mode, l.mode + 1}}, {"theta", num(l.theta)}, {"phi", num(l.phi)}});
  }
  return {{"stage", stage},
          {"target", matrix_to_json(mesh.target)},
          {"layers", layers},
          {"output_phases", numbers(mesh.output_phases)}};
}

ReckMesh mesh_from_json(const Json& doc) {
  ReckMesh mesh;
  mesh.target = matrix_from_json(field(doc, "target"));
  for (const Json& l : field(doc, "layers")) {
    MeshLayer layer;
    layer.mode = integer(field(l, "modes").at(0), "layer mode");
    layer.theta = number(field(l, "theta"), "theta");
    layer.phi = number(field(l, "phi"), "phi");
    mesh.layers.push_back(layer);
  }
  for (const Json& p : field(doc, "output_phases")) mesh.output_phases.push_back(number(p, "phase"));
  if (static_cast<Eigen::Index>(mesh.output_phases.size()) != mesh.target.rows()) {
    parse_fail("mesh output phases do not match the target size");
  }
  return mesh;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(Errc::parse_error, "write failed for '" + path.string() + "'");
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json set_to_json(const SymmetricSet& set) {
  return {{"N", set.order()},
          {"coefficients", coefficient_list(set.coefficients())},
          {"exponents", set.exponents()}};
}

SymmetricSet set_from_json(const Json& doc, const ToleranceConfig& tol) {
  try {
    const int n = integer(field(doc, "N"), "N");
    const Json& cs = field(doc, "coefficients");
    if (!cs.is_array() || cs.empty()) parse_fail("coefficients must be a non-empty array");
    std::vector<Complex> coeffs;
    for (const Json& c : cs) {
      if (c.is_number()) {
        coeffs.emplace_back(c.get<double>(), 0.0);
        continue;
      }
      const double re = number(field(c, "re"), "re");
      const double im = c.contains("im") ? number(c.at("im"), "im") : 0.0;
      coeffs.emplace_back(re, im);
    }
    if (!doc.contains("exponents")) return SymmetricSet::make_root_set(n, coeffs, tol);

    const Json& es = doc.at("exponents");
    if (!es.is_array() || es.size() != cs.size()) {
      parse_fail("exponents must list one integer per coefficient");
    }
    std::vector<Mode> modes;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const int e = integer(es[k], "exponent");
      modes.push_back({e, coeffs[k], e});
    }
    return SymmetricSet::from_modes(n, std::move(modes), tol);
  } catch (const Json::exception& e) {
    parse_fail(std::string("bad set description: ") + e.what());
  }
}

Json matrix_to_json(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

OperatorMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_array() || doc.empty()) parse_fail("matrix must be a non-empty array of rows");
  const std::size_t n_rows = doc.size();
  const std::size_t n_cols = doc[0].is_array() ? doc[0].size() : 0;
  if (n_cols == 0) parse_fail("matrix rows must be non-empty arrays");
  OperatorMatrix m(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const Json& row = doc[r];
    if (!row.is_array() || row.size() != n_cols) parse_fail("ragged matrix");
    for (std::size_t c = 0; c < n_cols; ++c) {
      const Json& z = row[c];
      if (!z.is_array() || z.size() != 2) parse_fail("matrix entries must be [re, im] pairs");
      m(r, c) = Complex(number(z[0], "re"), number(z[1], "im"));
    }
  }
  return m;
}

Json povm_to_json(const Povm& povm, Strategy strategy) {
  Json elements = Json::array();
  for (const OperatorMatrix& e : povm.elements) elements.push_back(matrix_to_json(e));
  return {{"type", "povm"},
          {"strategy", to_string(strategy)},
          {"dim", povm.dim},
          {"elements", elements},
          {"inconclusive", povm.inconclusive ? matrix_to_json(*povm.inconclusive) : Json(nullptr)}};
}

Povm povm_from_json(const Json& doc) {
  Povm p;
  p.dim = integer(field(doc, "dim"), "dim");
  const Json& elements = field(doc, "elements");
  if (!elements.is_array()) parse_fail("elements must be an array");
  for (const Json& e : elements) p.elements.push_back(matrix_from_json(e));
  if (doc.contains("inconclusive") && !doc.at("inconclusive").is_null()) {
    p.inconclusive = matrix_from_json(doc.at("inconclusive"));
  }
  return p;
}

Json report_to_json(const DesignReport& report) {
  return {{"strategy", to_string(report.strategy)},
          {"confidence_per_outcome", numbers(report.confidence_per_outcome)},
          {"inconclusive_probability", num(report.inconclusive_probability)}};
}

Json validation_to_json(const ValidationReport& report) {
  Json vs = Json::array();
  for (const Violation& v : report.violations) {
    vs.push_back({{"kind", to_string(v.kind)},
                  {"element", v.element},
                  {"magnitude", num(v.magnitude)},
                  {"message", v.message}});
  }
  return {{"ok", report.ok()}, {"violations", vs}};
}

Json plan_to_json(const SmcPlan& plan) {
  Json stages = Json::array();
  for (const StageRecord& s : plan.stages) {
    std::vector<double> mags = s.input.magnitudes();
    stages.push_back({{"stage", s.index},
                      {"dim", s.dim},
                      {"multiplicity", s.multiplicity},
                      {"confidence", num(s.confidence)},
                      {"failure_probability", num(s.failure_probability)},
                      {"exponents", s.input.exponents()},
                      {"magnitudes", numbers(mags)}});
  }
  return {{"type", "plan"},
          {"N", plan.order},
          {"termination", to_string(plan.termination)},
          {"stages", stages},
          {"p_correct", num(plan.p_correct_total)},
          {"p_inconclusive", num(plan.p_inconclusive_total)},
          {"p_error", num(plan.p_error_total)},
          {"diagnostics", plan.diagnostics}};
}

Json summary_to_json(const SimSummary& s, const ConsistencyReport& consistency) {
  Json stages = Json::array();
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const StageCounts& c = s.stages[i];
    stages.push_back({{"stage", i + 1},
                      {"reached", c.reached},
                      {"conclusive_correct", c.conclusive_correct},
                      {"conclusive_wrong", c.conclusive_wrong},
                      {"descended", c.descended},
                      {"empirical_confidence", num(s.empirical_confidence[i])},
                      {"confidence_stderr", num(s.confidence_stderr[i])}});
  }
  Json checks = Json::array();
  for (const StatCheck& c : consistency.checks) {
    checks.push_back({{"statistic", c.name},
                      {"empirical", num(c.empirical)},
                      {"analytic", num(c.analytic)},
                      {"std_error", num(c.std_error)},
                      {"z", num(c.z)},
                      {"samples", c.samples},
                      {"low_power", c.low_power},
                      {"pass", c.pass}});
  }
  return {{"type", "simulation"},
          {"seed", s.seed},
          {"trials", s.trials},
          {"N", s.order},
          {"stages", stages},
          {"terminal_inconclusive", s.terminal_inconclusive},
          {"p_correct", num(s.p_correct)},
          {"p_inconclusive", num(s.p_inconclusive)},
          {"p_error", num(s.p_error)},
          {"consistency",
           {{"threshold", num(consistency.threshold)}, {"pass", consistency.pass()}, {"checks", checks}}}};
}

Json circuit_to_json(const OpticalCircuit& circuit) {
  Json elements = Json::array();
  for (const OpticalElement& e : circuit.elements) {
    Json modes = Json::array();
    for (int p : e.paths) modes.push_back(circuit.paths.at(p));
    Json item = {{"kind", to_string(e.kind)},
                 {"modes", modes},
                 {"angle_or_phase", num(e.value)},
                 {"stage_box", e.box}};
    if (e.per_input) item["per_input"] = true;
    if (e.kind == ElementKind::Detector) item["label"] = e.label;
    elements.push_back(item);
  }
  const CompiledAngles& a = circuit.angles;
  Json meshes = Json::array();
  for (int m = 0; m < 2; ++m) {
    if (circuit.meshes[m].target.size() != 0) meshes.push_back(mesh_to_json(circuit.meshes[m], m + 1));
  }
  return {{"type", "circuit"},
          {"schema_version", 1},
          {"instance", {{"N", 4}, {"coefficients", coefficient_list(circuit.coefficients)}}},
          {"angles",
           {{"theta", num(a.theta)},
            {"phi", num(a.phi)},
            {"chi0", num(a.chi0)},
            {"chi1", num(a.chi1)},
            {"chi2", num(a.chi2)},
            {"alpha", {num(a.alpha[0]), num(a.alpha[1])}},
            {"beta0", num(a.beta0)},
            {"beta1", num(a.beta1)},
            {"beta0_by_convention", a.beta0_by_convention}}},
          {"stage2_inert", circuit.stage2_inert},
          {"paths", circuit.paths},
          {"source", circuit.paths.at(circuit.source)},
          {"elements", elements},
          {"meshes", meshes}};
}

OpticalCircuit circuit_from_json(const Json& doc) {
  try {
    if (!doc.is_object() || doc.value("type", "") != "circuit") parse_fail("not a circuit document");
    OpticalCircuit c;
    for (const Json& p : field(doc, "paths")) c.paths.push_back(p.get<std::string>());
    auto index_of = [&](const Json& label) {
      const std::string s = label.get<std::string>();
      for (std::size_t i = 0; i < c.paths.size(); ++i) {
        if (c.paths[i] == s) return static_cast<int>(i);
      }
      return -1;  // left for check_circuit to report
    };
    c.source = index_of(field(doc, "source"));
    for (const Json& e : field(doc, "elements")) {
      OpticalElement el;
      el.kind = element_kind_from_string(field(e, "kind").get<std::string>());
      for (const Json& m : field(e, "modes")) el.paths.push_back(index_of(m));
      el.value = number(field(e, "angle_or_phase"), "angle_or_phase");
      el.box = integer(field(e, "stage_box"), "stage_box");
      el.per_input = e.value("per_input", false);
      el.label = e.value("label", "");
      c.elements.push_back(std::move(el));
    }
    if (doc.contains("meshes")) {
      for (const Json& m : doc.at("meshes")) {
        const int stage = integer(field(m, "stage"), "mesh stage");
        if (stage < 1 || stage > 2) parse_fail("mesh stage must be 1 or 2");
        c.meshes[stage - 1] = mesh_from_json(m);
      }
    }
    if (doc.contains("angles")) {
      const Json& a = doc.at("angles");
      c.angles.theta = a.value("theta", 0.0);
      c.angles.phi = a.value("phi", 0.0);
      c.angles.chi0 = a.value("chi0", 0.0);
      c.angles.chi1 = a.value("chi1", 0.0);
      c.angles.chi2 = a.value("chi2", 0.0);
      if (a.contains("alpha")) {
        c.angles.alpha = {number(a.at("alpha").at(0), "alpha"), number(a.at("alpha").at(1), "alpha")};
      }
      c.angles.beta0 = a.value("beta0", 0.0);
      c.angles.beta1 = a.value("beta1", 0.0);
      c.angles.beta0_by_convention = a.value("beta0_by_convention", false);
    }
    c.stage2_inert = doc.value("stage2_inert", false);
    if (doc.contains("instance")) {
      for (const Json& z : field(doc.at("instance"), "coefficients")) {
        c.coefficients.emplace_back(number(field(z, "re"), "re"), number(field(z, "im"), "im"));
      }
    }
    return c;
  } catch (const Json::exception& e) {
    parse_fail(std::string("bad circuit document: ") + e.what());
  }
}

Json distributions_to_json(const std::vector<DetectorDistribution>& per_input) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < per_input.size(); ++j) {
    Json probs = Json::object();
    const DetectorDistribution& d = per_input[j];
    for (std::size_t k = 0; k < d.labels.size(); ++k) probs[d.labels[k]] = num(d.probabilities[k]);
    rows.push_back({{"input", j}, {"probabilities", probs}, {"undetected", num(d.undetected)}});
  }
  return {{"type", "detector_distribution"}, {"inputs", rows}};
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = csv_line(sweep_columns());
  for (const SweepRow& r : result.rows) {
    out += csv_line({format12(r.c0), format12(r.c1), format12(r.mc_conf_stage1),
                     format12(r.mc_conf_stage2), format12(r.me_conf), format12(r.p_fail_stage1),
                     format12(r.p_fail_stage2), format12(r.p_corr_stage1_only),
                     format12(r.p_corr_smc), format12(r.p_corr_me),
                     format12(r.p_inconclusive_smc)});
  }
  return out;
}

std::string plan_csv(const SmcPlan& plan) {
  std::string out = csv_line({"stage", "dim", "multiplicity", "confidence", "failure_probability"});
  for (const StageRecord& s : plan.stages) {
    out += csv_line({std::to_string(s.index), std::to_string(s.dim), std::to_string(s.multiplicity),
                     format12(s.confidence), format12(s.failure_probability)});
  }
  return out;
}

std::string summary_csv(const SimSummary&, const ConsistencyReport& consistency) {
  std::string out =
      csv_line({"statistic", "empirical", "analytic", "std_error", "z", "samples", "low_power", "pass"});
  for (const StatCheck& c : consistency.checks) {
    out += csv_line({c.name, format12(c.empirical), format12(c.analytic), format12(c.std_error),
                     format12(c.z), std::to_string(c.samples), c.low_power ? "1" : "0",
                     c.pass ? "1" : "0"});
  }
  return out;
}

std::string distributions_csv(const std::vector<DetectorDistribution>& per_input) {
  if (per_input.empty()) return "input\n";
  std::vector<std::string> header = {"input"};
  for (const std::string& l : per_input.front().labels) header.push_back(l);
  std::string out = csv_line(header);
  for (std::size_t j = 0; j < per_input.size(); ++j) {
    std::vector<std::string> cells = {std::to_string(j)};
    for (double p : per_input[j].probabilities) cells.push_back(format12(p));
    out += csv_line(cells);
  }
  return out;
}

void apply_tolerance_override(ToleranceConfig& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) parse_fail("tolerance override must look like name=value");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    parse_fail("tolerance value '" + text + "' is not a number");
  }
  if (name == "eps_norm") tol.eps_norm = value;
  else if (name == "eps_herm") tol.eps_herm = value;
  else if (name == "eps_psd") tol.eps_psd = value;
  else if (name == "eps_unitary") tol.eps_unitary = value;
  else if (name == "eps_prob") tol.eps_prob = value;
  else if (name == "eps_group") tol.eps_group = value;
  else parse_fail("unknown tolerance '" + name + "'");
  tol.validate();
}

Json tolerances_to_json(const ToleranceConfig& tol) {
  return {{"eps_norm", tol.eps_norm},   {"eps_herm", tol.eps_herm},
          {"eps_psd", tol.eps_psd},     {"eps_unitary", tol.eps_unitary},
          {"eps_prob", tol.eps_prob},   {"eps_group", tol.eps_group}};
}

}  // namespace qsmc
