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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qsmc/montecarlo.hpp"
#include "qsmc/optics.hpp"
#include "qsmc/povm.hpp"
#include "qsmc/serialize.hpp"
#include "qsmc/smc.hpp"
#include "support/oracles.hpp"
#include "support/random_sets.hpp"

using namespace qsmc;

namespace {

constexpr double kTol = 1e-10;
constexpr unsigned long long kSetSeed = 20260101;
constexpr int kSetCount = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0.0;  // 0: no runtime bound
};

// Tracks the worst deviation seen for a named quantity.
struct Worst {
  double value = 0.0;
  void see(double x) { value = std::max(value, std::abs(x)); }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<SymmetricSet> random_sets() {
  testing::RandomSets gen(kSetSeed, 10);
  std::vector<SymmetricSet> out;
  for (int i = 0; i < kSetCount; ++i) out.push_back(gen.next());
  return out;
}

bool magnitudes_equal(const SymmetricSet& s) {
  const std::vector<double> m = s.magnitudes();
  for (double x : m) {
    if (std::abs(x - m.front()) > 1e-9) return false;
  }
  return true;
}

SymmetricSet make(int n, std::vector<double> mags) {
  std::vector<Complex> c(mags.begin(), mags.end());
  return SymmetricSet::make_root_set(n, c);
}

SymmetricSet qutrit() { return make(4, {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)}); }

Outcome povm_validity() {
  Outcome o;
  o.limit_seconds = 10.0;
  ToleranceConfig tol;
  tol.eps_psd = tol.eps_unitary = tol.eps_herm = kTol;
  Worst conf, inc;
  int invalid = 0;
  for (const SymmetricSet& s : random_sets()) {
    const auto [povm, report] = mc_povm_symmetric(s, tol);
    if (!validate_povm(povm, tol).ok()) ++invalid;
    const DesignReport measured = report_from_povm(povm, s, Strategy::MaxConfidence);
    const double dn = static_cast<double>(s.dim()) / s.order();
    for (int j = 0; j < s.order(); ++j) {
      conf.see(measured.confidence_per_outcome[j] - dn);
      conf.see(report.confidence_per_outcome[j] - dn);
    }
    const double cmin = oracle::min_magnitude(s);
    const double expect = 1.0 - s.dim() * cmin * cmin;
    inc.see(measured.inconclusive_probability - expect);
    inc.see(report.inconclusive_probability - expect);
  }
  o.pass = invalid == 0 && conf.value <= kTol && inc.value <= kTol;
  o.detail = std::to_string(kSetCount) + " sets, invalid " + std::to_string(invalid) +
             ", max |conf - D/N| " + fmt("%.2e", conf.value) + ", max |P(?) - (1 - D c_min^2)| " +
             fmt("%.2e", inc.value);
  return o;
}

Outcome me_bound() {
  Outcome o;
  int uniform = 0, violations = 0, misclassified = 0;
  double smallest_gap_nonuniform = INFINITY;
  for (const SymmetricSet& s : random_sets()) {
    const auto [povm, report] = me_povm(s);
    const std::vector<ComplexVector> st = states(s);
    const std::vector<double> priors(s.order(), 1.0 / s.order());
    const double dn = static_cast<double>(s.dim()) / s.order();
    for (int j = 0; j < s.order(); ++j) {
      const double c = confidence(povm.elements[j], st, priors, j);
      if (c > dn + kTol) ++violations;
      const bool at_bound = std::abs(c - dn) <= kTol;
      const bool eq = magnitudes_equal(s);
      if (at_bound != eq) ++misclassified;
      if (!eq) smallest_gap_nonuniform = std::min(smallest_gap_nonuniform, dn - c);
    }
    uniform += magnitudes_equal(s);
  }
  o.pass = violations == 0 && misclassified == 0 && uniform > 0;
  o.detail = std::to_string(kSetCount) + " sets (" + std::to_string(uniform) +
             " uniform), bound violations " + std::to_string(violations) +
             ", equality mismatches " + std::to_string(misclassified) +
             ", smallest non-uniform gap " + fmt("%.2e", smallest_gap_nonuniform);
  return o;
}

Outcome neumark_equivalence() {
  Outcome o;
  Worst dist, branch, chain;
  for (const SymmetricSet& s : random_sets()) {
    const StageRealization st = build_stage(s);
    const auto [povm, report] = mc_povm_symmetric(s);
    const StageOutcome first = apply_stage(st.two_outcome, s, 0);
    const SmcPlan p = plan(s);
    for (int j = 0; j < s.order(); ++j) {
      const ComplexVector psi = oracle::state(s, j);
      const Eigen::VectorXd d = conclusive_distribution(st, psi);
      for (int k = 0; k < s.order(); ++k) {
        dist.see(d(k) - (povm.elements[k] * psi * psi.adjoint()).trace().real());
      }
      const StageOutcome b = apply_stage(st.two_outcome, s, j);
      branch.see(b.success.probability - first.success.probability);
      branch.see(b.failure.probability - first.failure.probability);

      // Whole sequential chain: per-stage joint success and the terminal
      // inconclusive mass reproduce the plan totals.
      const ChainOutcome c = run_chain(p, j);
      double correct = 0.0, conclusive = 0.0;
      for (std::size_t k = 0; k < c.stage_detections.size(); ++k) {
        correct += c.stage_detections[k](j);
        conclusive += c.stage_detections[k].sum();
      }
      chain.see(correct - p.p_correct_total);
      chain.see(c.inconclusive - p.p_inconclusive_total);
      chain.see(conclusive + c.inconclusive - 1.0);
    }
  }
  o.pass = dist.value <= kTol && branch.value <= kTol && chain.value <= kTol;
  o.detail = "max |P(k|chain) - Tr(Pi_k rho_j)| " + fmt("%.2e", dist.value) +
             ", max branch spread over j " + fmt("%.2e", branch.value) + ", max chain-vs-plan " +
             fmt("%.2e", chain.value);
  return o;
}

Outcome qutrit_closed_forms() {
  Outcome o;
  const SymmetricSet s = qutrit();
  const SmcPlan p = plan(s);
  bool ok = p.stages.size() == 2;
  double worst12 = 0.0, worst10 = 0.0;
  if (ok) {
    worst12 = std::max(std::abs(p.stages[0].confidence - 0.75), std::abs(p.stages[1].confidence - 0.5));
    const double c0 = std::sqrt(0.5), c1 = std::sqrt(0.3);
    for (double d : {p.stages[0].failure_probability - 0.4, p.stages[1].failure_probability - 0.5,
                     p.p_correct_total - 0.55, p.p_inconclusive_total - 0.2,
                     p.p_inconclusive_total - (c0 * c0 - c1 * c1), p.p_error_total - 0.25}) {
      worst10 = std::max(worst10, std::abs(d));
    }
  }
  // Monte Carlo cross-check of the derived totals.
  const SimSummary sim = simulate(p, {7, 1000000});
  const ConsistencyReport mc = consistency_report(sim, p);
  o.pass = ok && worst12 <= 1e-12 && worst10 <= kTol && mc.pass();
  o.detail = "confidences dev " + fmt("%.2e", worst12) + ", totals dev " + fmt("%.2e", worst10) +
             ", MC 1e6 trials P_corr " + format12(sim.p_correct) + " P_? " +
             format12(sim.p_inconclusive) + " P_err " + format12(sim.p_error) +
             (mc.pass() ? " (within 4 sigma)" : " (OUTSIDE 4 sigma)");
  return o;
}

Outcome seven_mode_structure() {
  Outcome o;
  std::vector<double> m;
  for (double m2 : {0.2, 0.2, 0.2, 0.12, 0.12, 0.08, 0.08}) m.push_back(std::sqrt(m2));
  const SmcPlan p = plan(make(8, m));
  std::string dims;
  for (const StageRecord& s : p.stages) dims += (dims.empty() ? "" : ",") + std::to_string(s.dim);
  o.pass = p.stages.size() == 3 && p.stages[0].dim == 7 && p.stages[1].dim == 5 &&
           p.stages[2].dim == 3 && std::abs(p.stages.back().failure_probability) <= kTol;
  o.detail = std::to_string(p.stages.size()) + " stages, dims (" + dims +
             "), terminal failure probability " + format12(p.stages.back().failure_probability);
  return o;
}

Outcome monte_carlo_consistency() {
  Outcome o;
  o.limit_seconds = 5.0;
  const SmcPlan p = plan(qutrit());
  const SimSummary a = simulate(p, {42, 100000});
  const SimSummary b = simulate(p, {42, 100000});
  const ConsistencyReport r = consistency_report(a, p);
  const std::string da = dump(summary_to_json(a, r));
  const std::string db = dump(summary_to_json(b, consistency_report(b, p)));
  double worst_z = 0.0;
  for (const StatCheck& c : r.checks) worst_z = std::max(worst_z, std::abs(c.z));
  o.pass = r.pass() && da == db && a == simulate_serial(p, {42, 100000});
  o.detail = std::to_string(r.checks.size()) + " statistics, max |z| " + fmt("%.3f", worst_z) +
             ", rerun " + (da == db ? "byte-identical" : "DIFFERS");
  return o;
}

Outcome me_inequality_sweep() {
  Outcome o;
  o.limit_seconds = 30.0;
  const double hi = 2.0 / std::sqrt(3.0);
  const SweepResult r = sweep_qutrit(make_grid(0.0, hi, 101, 0.0, hi, 101));
  double min_gap = INFINITY;
  int zero_rows = 0, zero_off_uniform = 0;
  bool uniform_seen = false;
  for (const SweepRow& row : r.rows) {
    const double gap = row.p_corr_me - row.p_corr_smc;
    min_gap = std::min(min_gap, gap);
    const double c2 = std::sqrt(std::max(0.0, 1.0 - row.c0 * row.c0 - row.c1 * row.c1));
    const bool uniform = std::abs(row.c0 - row.c1) <= 1e-9 && std::abs(row.c1 - c2) <= 1e-9;
    if (uniform) uniform_seen = std::abs(gap) <= kTol;
    if (std::abs(gap) <= kTol) {
      ++zero_rows;
      if (!uniform) ++zero_off_uniform;
    }
  }
  o.pass = min_gap >= -kTol && zero_off_uniform == 0 && uniform_seen;
  o.detail = "101x101 grid over [0, 2/sqrt 3]^2: " + std::to_string(r.rows.size()) + " feasible, " +
             std::to_string(r.skipped.size()) + " skipped; min gap " + fmt("%.2e", min_gap) +
             ", zero-gap rows " + std::to_string(zero_rows) + " (all at the uniform point: " +
             (zero_off_uniform == 0 && uniform_seen ? "yes" : "NO") + ")";
  return o;
}

Outcome optical_equivalence() {
  Outcome o;
  const SymmetricSet s = qutrit();
  const OpticalCircuit c = build_circuit(s);
  const SmcPlan p = plan(s);
  Worst chain, stage1, levi, inc;
  const double c2sq = 0.2;
  for (int j = 0; j < 4; ++j) {
    const DetectorDistribution got = simulate_network(c, j);
    const DetectorDistribution want = expected_detector_distribution(p, j);
    for (std::size_t k = 0; k < want.labels.size(); ++k) {
      chain.see(got.at(want.labels[k]) - want.probabilities[k]);
    }
    chain.see(got.undetected);
    for (int k = 0; k < 4; ++k) {
      stage1.see(got.at("s1_" + std::to_string(k)) - 3 * c2sq * (j == k ? 0.75 : 1.0 / 12.0));
    }
    levi.see(got.at("s2_" + std::to_string((j + 2) % 4)));
    inc.see(got.at("?") - (0.5 - 0.3));
  }
  const double mesh = std::max(c.meshes[0].reconstruction_error(), c.meshes[1].reconstruction_error());
  o.pass = chain.value <= kTol && stage1.value <= kTol && levi.value <= kTol && inc.value <= kTol &&
           mesh <= kMeshTolerance && check_circuit(c).ok();
  o.detail = "circuit vs chain " + fmt("%.2e", chain.value) + ", stage-1 structure " +
             fmt("%.2e", stage1.value) + ", detector j+2 " + fmt("%.2e", levi.value) + ", '?' vs c0^2-c1^2 " +
             fmt("%.2e", inc.value) + ", mesh reconstruction " + fmt("%.2e", mesh);
  return o;
}

Outcome degenerate_handling() {
  Outcome o;
  testing::RandomSets gen(kSetSeed + 1, 10);
  int uniform_sets = 0, one_dim_sets = 0, failures = 0;
  Worst overlap;
  for (int i = 0; i < 100; ++i) {
    const SymmetricSet u = gen.make(testing::RandomSets::Kind::Uniform);
    ++uniform_sets;
    const SmcPlan p = plan(u);
    const auto [mc, mcr] = mc_povm_symmetric(u);
    const auto [me, mer] = me_povm(u);
    bool ok = p.stages.size() == 1 && p.termination == Termination::UniformCoefficients &&
              p.p_inconclusive_total == 0.0 && mcr.inconclusive_probability == 0.0 &&
              !mc.inconclusive.has_value();
    for (int j = 0; ok && j < u.order(); ++j) ok = max_abs_diff(mc.elements[j], me.elements[j]) <= kTol;
    failures += !ok;

    const SymmetricSet d = gen.make(testing::RandomSets::Kind::OneDimFailure);
    ++one_dim_sets;
    const SmcPlan q = plan(d);
    const bool one = q.stages.size() == 1 && q.termination == Termination::OneDimensionalFailure &&
                     std::holds_alternative<OneDimensionalFailure>(q.stages[0].realization.failure);
    failures += !one;
    const StageRealization& st = q.stages[0].realization;
    const ComplexVector xi0 = *apply_stage(st.two_outcome, d, 0).failure.state;
    for (int j = 1; j < d.order(); ++j) {
      const ComplexVector xij = *apply_stage(st.two_outcome, d, j).failure.state;
      overlap.see(std::abs(xi0.dot(xij)) - 1.0);
    }
  }
  o.pass = failures == 0 && overlap.value <= kTol;
  o.detail = std::to_string(uniform_sets) + " uniform + " + std::to_string(one_dim_sets) +
             " d = D-1 sets, structural failures " + std::to_string(failures) +
             ", max | |<xi_0|xi_j>| - 1 | " + fmt("%.2e", overlap.value);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "MC POVM validity on random sets", povm_validity},
      {"AC2", "ME confidence bound", me_bound},
      {"AC3", "Neumark chain equivalence", neumark_equivalence},
      {"AC4", "qutrit closed forms", qutrit_closed_forms},
      {"AC5", "seven-mode stage structure", seven_mode_structure},
      {"AC6", "Monte Carlo consistency", monte_carlo_consistency},
      {"AC7", "SMC <= ME over the qutrit grid", me_inequality_sweep},
      {"AC8", "optical circuit equivalence", optical_equivalence},
      {"AC9", "degenerate handling", degenerate_handling},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = o.limit_seconds == 0.0 || secs < o.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %s  %s: %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs, o.limit_seconds > 0.0 ? (in_time ? " within limit" : " OVER LIMIT") : "");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
