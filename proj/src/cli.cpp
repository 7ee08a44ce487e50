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

#include "qsmc/cli.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "qsmc/montecarlo.hpp"
#include "qsmc/optics.hpp"
#include "qsmc/povm.hpp"
#include "qsmc/serialize.hpp"
#include "qsmc/smc.hpp"

namespace qsmc {

namespace fs = std::filesystem;

namespace {

const char* const kDefaultGrid = "0:1.1547005383792515:101,0:1.1547005383792515:101";

struct Options {
  std::string input;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string grid = kDefaultGrid;
  std::string format = "csv";
  std::vector<std::string> tolerance_overrides;
  ToleranceConfig tol;
};

// Collects output documents; written to --output-dir with a manifest, or
// discarded when no directory was given.
class Outputs {
 public:
  Outputs(const Options& opt, RunManifest& manifest) : opt_(opt), manifest_(manifest) {}

  void add(const std::string& name, const std::string& text) { files_.emplace_back(name, text); }
  bool enabled() const { return !opt_.output_dir.empty(); }

  void flush() {
    if (!enabled()) return;
    std::error_code ec;
    fs::create_directories(opt_.output_dir, ec);
    if (ec) throw Error(Errc::parse_error, "cannot create '" + opt_.output_dir + "': " + ec.message());
    for (const auto& [name, text] : files_) {
      write_text_file(fs::path(opt_.output_dir) / name, text);
      manifest_.outputs.push_back({name, crc32_of(text), text.size()});
    }
    write_text_file(fs::path(opt_.output_dir) / "manifest.json", dump(manifest_json()));
  }

 private:
  Json manifest_json() const {
    Json outputs = Json::array();
    for (const OutputFile& f : manifest_.outputs) {
      char hex[16];
      std::snprintf(hex, sizeof hex, "%08x", static_cast<unsigned>(f.crc32));
      outputs.push_back({{"file", f.name}, {"crc32", hex}, {"bytes", f.bytes}});
    }
    Json doc = {{"tool", "qsmc"}, {"version", kToolVersion}, {"command", manifest_.command}};
    doc["input"] = manifest_.input.empty() ? Json(nullptr) : Json(manifest_.input);
    doc["seed"] = manifest_.seed ? Json(*manifest_.seed) : Json(nullptr);
    doc["trials"] = manifest_.trials ? Json(*manifest_.trials) : Json(nullptr);
    doc["grid"] = manifest_.grid.empty() ? Json(nullptr) : Json(manifest_.grid);
    doc["format"] = manifest_.format;
    doc["tolerances"] = tolerances_to_json(manifest_.tolerances);
    doc["skipped"] = manifest_.skipped;
    doc["outputs"] = outputs;
    return doc;
  }

  const Options& opt_;
  RunManifest& manifest_;
  std::vector<std::pair<std::string, std::string>> files_;
};

SymmetricSet load_set(const Options& opt) {
  return set_from_json(parse_json(read_text_file(opt.input)), opt.tol);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

int cmd_design(const Options& opt, Outputs& files, std::ostream& out) {
  const SymmetricSet set = load_set(opt);
  const auto [mc, mc_report] = mc_povm_symmetric(set, opt.tol);
  const auto [me, me_report] = me_povm(set);
  const ValidationReport mc_valid = validate_povm(mc, opt.tol);
  const ValidationReport me_valid = validate_povm(me, opt.tol);
  const bool uniform = coefficient_profile(set, opt.tol).uniform();

  out << "design N=" << set.order() << " D=" << set.dim() << "\n";
  out << pad("strategy", 16) << pad("confidence", 16) << "P(?)\n";
  out << pad(to_string(Strategy::MaxConfidence), 16)
      << pad(format12(mc_report.confidence_per_outcome.front()), 16)
      << format12(mc_report.inconclusive_probability) << "\n";
  out << pad(to_string(Strategy::MinError), 16)
      << pad(format12(me_report.confidence_per_outcome.front()), 16)
      << format12(me_report.inconclusive_probability) << "\n";
  if (uniform) out << "MC = ME, no inconclusive element\n";

  Json report = {{"type", "design_report"},
                 {"N", set.order()},
                 {"D", set.dim()},
                 {"mc_equals_me", uniform},
                 {"max_confidence", report_to_json(mc_report)},
                 {"min_error", report_to_json(me_report)},
                 {"validation",
                  {{"max_confidence", validation_to_json(mc_valid)},
                   {"min_error", validation_to_json(me_valid)}}}};
  files.add("povm_mc.json", dump(povm_to_json(mc, Strategy::MaxConfidence)));
  files.add("povm_me.json", dump(povm_to_json(me, Strategy::MinError)));
  files.add("design_report.json", dump(report));

  if (!mc_valid.ok() || !me_valid.ok()) {
    for (const auto* v : {&mc_valid, &me_valid}) {
      for (const Violation& x : v->violations) out << "violation: " << x.message << "\n";
    }
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_plan(const Options& opt, Outputs& files, std::ostream& out) {
  const SymmetricSet set = load_set(opt);
  const SmcPlan p = plan(set, opt.tol);

  out << pad("stage", 7) << pad("D", 5) << pad("d", 5) << pad("confidence", 16)
      << pad("P(fail)", 16) << "exponents\n";
  for (const StageRecord& s : p.stages) {
    out << pad(std::to_string(s.index), 7) << pad(std::to_string(s.dim), 5)
        << pad(std::to_string(s.multiplicity), 5) << pad(format12(s.confidence), 16)
        << pad(format12(s.failure_probability), 16) << join_ints(s.input.exponents()) << "\n";
  }
  out << "stages " << p.stages.size() << ", termination " << to_string(p.termination) << "\n";
  out << "P_correct " << format12(p.p_correct_total) << "\n";
  out << "P_inconclusive " << format12(p.p_inconclusive_total) << "\n";
  out << "P_error " << format12(p.p_error_total) << "\n";
  for (const std::string& d : p.diagnostics) out << "note: " << d << "\n";

  files.add("plan.json", dump(plan_to_json(p)));
  if (opt.format == "csv") files.add("stages.csv", plan_csv(p));
  return kExitOk;
}

int cmd_simulate(const Options& opt, Outputs& files, std::ostream& out) {
  const SymmetricSet set = load_set(opt);
  const SmcPlan p = plan(set, opt.tol);
  const SimSummary s = simulate(p, {opt.seed, opt.trials}, opt.tol);
  const ConsistencyReport c = consistency_report(s, p, opt.tol.eps_prob);

  out << "seed " << s.seed << " trials " << s.trials << "\n";
  out << pad("statistic", 22) << pad("empirical", 16) << pad("analytic", 16) << pad("z", 16)
      << "status\n";
  for (const StatCheck& k : c.checks) {
    out << pad(k.name, 22) << pad(format12(k.empirical), 16) << pad(format12(k.analytic), 16)
        << pad(format12(k.z), 16) << (k.pass ? "ok" : "FAIL") << (k.low_power ? " (low power)" : "")
        << "\n";
  }
  out << "consistency " << (c.pass() ? "pass" : "FAIL") << "\n";

  if (opt.format == "json") {
    files.add("simulation.json", dump(summary_to_json(s, c)));
  } else {
    files.add("simulation.csv", summary_csv(s, c));
    files.add("simulation.json", dump(summary_to_json(s, c)));
  }
  return c.pass() ? kExitOk : kExitValidation;
}

int cmd_sweep(const Options& opt, Outputs& files, RunManifest& manifest, std::ostream& out) {
  const GridSpec g = parse_grid(opt.grid);
  const auto grid = make_grid(g.c0_lo, g.c0_hi, g.c0_count, g.c1_lo, g.c1_hi, g.c1_count);
  const SweepResult r = sweep_qutrit(grid, opt.tol);
  manifest.skipped = r.skipped.size();

  std::string table;
  if (opt.format == "json") {
    Json rows = Json::array();
    for (const SweepRow& row : r.rows) {
      const double v[] = {row.c0, row.c1, row.mc_conf_stage1, row.mc_conf_stage2, row.me_conf,
                          row.p_fail_stage1, row.p_fail_stage2, row.p_corr_stage1_only,
                          row.p_corr_smc, row.p_corr_me, row.p_inconclusive_smc};
      Json obj = Json::object();
      for (std::size_t k = 0; k < sweep_columns().size(); ++k) obj[sweep_columns()[k]] = round12(v[k]);
      rows.push_back(obj);
    }
    table = dump({{"type", "sweep"}, {"columns", sweep_columns()}, {"rows", rows},
                  {"skipped", r.skipped.size()}});
    files.add("sweep.json", table);
  } else {
    table = sweep_csv(r);
    files.add("sweep.csv", table);
  }

  if (!files.enabled()) {
    out << table;
    return kExitOk;
  }
  double min_gap = INFINITY;
  for (const SweepRow& row : r.rows) min_gap = std::min(min_gap, row.p_corr_me - row.p_corr_smc);
  out << "rows " << r.rows.size() << ", skipped " << r.skipped.size() << "\n";
  if (!r.rows.empty()) out << "min(P_corr_ME - P_corr_SMC) " << format12(min_gap) << "\n";
  return kExitOk;
}

int cmd_compile_optics(const Options& opt, Outputs& files, std::ostream& out) {
  const SymmetricSet set = load_set(opt);
  const OpticalCircuit circuit = build_circuit(set, opt.tol);
  const SmcPlan p = plan(set, opt.tol);
  const CircuitCheck check = check_circuit(circuit, opt.tol);

  std::vector<DetectorDistribution> dists;
  double max_dev = 0.0;
  for (int j = 0; j < 4; ++j) {
    dists.push_back(simulate_network(circuit, j));
    const DetectorDistribution expected = expected_detector_distribution(p, j, opt.tol);
    for (std::size_t k = 0; k < expected.labels.size(); ++k) {
      max_dev = std::max(max_dev, std::abs(dists.back().at(expected.labels[k]) - expected.probabilities[k]));
    }
  }

  const CompiledAngles& a = circuit.angles;
  out << "theta " << format12(a.theta) << "  phi " << format12(a.phi) << "\n";
  out << "chi " << format12(a.chi0) << " " << format12(a.chi1) << " " << format12(a.chi2) << "\n";
  out << "alpha " << format12(a.alpha[0]) << " " << format12(a.alpha[1]) << "\n";
  out << "beta " << format12(a.beta0) << " " << format12(a.beta1)
      << (a.beta0_by_convention ? "  (beta0 by convention)" : "") << "\n";
  if (circuit.stage2_inert) out << "stage 2 inert: never reached\n";
  out << "elements " << circuit.elements.size() << ", detectors " << circuit.detector_labels().size()
      << "\n";
  out << distributions_csv(dists);
  out << "max deviation from abstract chain " << format12(max_dev) << "\n";

  files.add("circuit.json", dump(circuit_to_json(circuit)));
  if (opt.format == "json") {
    files.add("detectors.json", dump(distributions_to_json(dists)));
  } else {
    files.add("detectors.csv", distributions_csv(dists));
  }

  if (!check.ok() || max_dev > opt.tol.eps_prob) {
    for (const std::string& problem : check.problems) out << "problem: " << problem << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const Json doc = parse_json(read_text_file(opt.input));
  const std::string type = doc.is_object() ? doc.value("type", "") : "";
  if (type == "povm") {
    const ValidationReport r = validate_povm(povm_from_json(doc), opt.tol);
    for (const Violation& v : r.violations) {
      out << "violation " << to_string(v.kind) << " element " << v.element << ": " << v.message
          << "\n";
    }
    out << "povm " << (r.ok() ? "valid" : "INVALID") << "\n";
    return r.ok() ? kExitOk : kExitValidation;
  }
  if (type == "circuit") {
    const CircuitCheck c = check_circuit(circuit_from_json(doc), opt.tol);
    for (const std::string& p : c.problems) out << "problem: " << p << "\n";
    out << "circuit " << (c.ok() ? "valid" : "INVALID") << "\n";
    return c.ok() ? kExitOk : kExitValidation;
  }
  if (doc.is_object() && doc.contains("N") && doc.contains("coefficients")) {
    const SymmetricSet set = set_from_json(doc, opt.tol);
    out << "set valid: N=" << set.order() << " D=" << set.dim() << "\n";
    return kExitOk;
  }
  throw Error(Errc::parse_error, "unrecognized document: expected a set, povm or circuit");
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::invalid_tolerance:
      return kExitIo;
    default:
      return kExitDomain;
  }
}

std::uint32_t crc32_of(const std::string& bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

GridSpec parse_grid(const std::string& text) {
  auto bad = [&]() { throw Error(Errc::parse_error, "grid must look like lo:hi:count,lo:hi:count, got '" + text + "'"); };
  double v[6];
  const char* p = text.c_str();
  for (int axis = 0; axis < 2; ++axis) {
    for (int k = 0; k < 3; ++k) {
      char* end = nullptr;
      v[3 * axis + k] = std::strtod(p, &end);
      if (end == p) bad();
      const char want = k < 2 ? ':' : (axis == 0 ? ',' : '\0');
      if (*end != want) bad();
      p = want ? end + 1 : end;
    }
  }
  GridSpec g{v[0], v[1], static_cast<int>(v[2]), v[3], v[4], static_cast<int>(v[5])};
  if (v[2] != g.c0_count || v[5] != g.c1_count || g.c0_count < 1 || g.c1_count < 1) bad();
  if (!(g.c0_lo <= g.c0_hi) || !(g.c1_lo <= g.c1_hi)) bad();
  return g;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Sequential maximum-confidence measurement toolkit for symmetric pure states", "qsmc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "set description (JSON)");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--output-dir", opt.output_dir, "directory for output files and manifest.json");
    sub->add_option("--tolerance", opt.tolerance_overrides, "override, e.g. eps_prob=1e-9 (repeatable)");
    sub->add_option("--format", opt.format, "tabular output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* design = app.add_subcommand("design", "MC and ME POVMs with their report");
  add_common(design, true);
  CLI::App* plan_cmd = app.add_subcommand("plan", "stage table and totals of the sequential measurement");
  add_common(plan_cmd, true);
  CLI::App* sim = app.add_subcommand("simulate", "seeded Monte Carlo run with consistency checks");
  add_common(sim, true);
  sim->add_option("--seed", opt.seed, "RNG seed")->required();
  sim->add_option("--trials", opt.trials, "number of trials")->required()->check(CLI::PositiveNumber);
  CLI::App* sweep = app.add_subcommand("sweep", "qutrit closed forms over a grid in (|c0|, |c1|)");
  add_common(sweep, false);
  sweep->add_option("--grid", opt.grid, "lo:hi:count,lo:hi:count")->capture_default_str();
  CLI::App* optics = app.add_subcommand("compile-optics", "linear-optical circuit for the qutrit instance");
  add_common(optics, true);
  CLI::App* validate = app.add_subcommand("validate", "re-check a serialized POVM, circuit or set");
  add_common(validate, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  RunManifest manifest;
  manifest.input = opt.input;
  manifest.format = opt.format;
  try {
    for (const std::string& o : opt.tolerance_overrides) apply_tolerance_override(opt.tol, o);
    manifest.tolerances = opt.tol;
    Outputs files(opt, manifest);
    int code = kExitOk;
    if (design->parsed()) {
      manifest.command = "design";
      code = cmd_design(opt, files, out);
    } else if (plan_cmd->parsed()) {
      manifest.command = "plan";
      code = cmd_plan(opt, files, out);
    } else if (sim->parsed()) {
      manifest.command = "simulate";
      manifest.seed = opt.seed;
      manifest.trials = opt.trials;
      code = cmd_simulate(opt, files, out);
    } else if (sweep->parsed()) {
      manifest.command = "sweep";
      manifest.grid = opt.grid;
      code = cmd_sweep(opt, files, manifest, out);
    } else if (optics->parsed()) {
      manifest.command = "compile-optics";
      code = cmd_compile_optics(opt, files, out);
    } else {
      manifest.command = "validate";
      code = cmd_validate(opt, out);
    }
    files.flush();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace qsmc
