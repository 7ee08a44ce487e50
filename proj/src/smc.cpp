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

#include "qsmc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsmc/povm.hpp"

namespace qsmc {

const char* to_string(Termination t) {
  return t == Termination::UniformCoefficients ? "UniformCoefficients" : "OneDimensionalFailure";
}

namespace {

// Totals by walking the stages: reach probability times success times
// confidence, and the product of every failure probability.
void compute_totals(SmcPlan& p, double eps_prob) {
  CompensatedSum correct;
  double reach = 1.0;
  for (const StageRecord& s : p.stages) {
    correct.add(reach * (1.0 - s.failure_probability) * s.confidence);
    reach *= s.failure_probability;
  }
  p.p_correct_total = clamp_probability(correct.value(), eps_prob);
  p.p_inconclusive_total = clamp_probability(reach, eps_prob);
  p.p_error_total =
      clamp_probability(1.0 - p.p_correct_total - p.p_inconclusive_total, eps_prob);
}

}  // namespace

SmcPlan SmcPlan::truncated(int count, double eps_prob) const {
  SmcPlan out = *this;
  if (count < static_cast<int>(stages.size())) {
    out.stages.erase(out.stages.begin() + std::max(count, 0), out.stages.end());
    out.termination = Termination::OneDimensionalFailure;
  }
  compute_totals(out, eps_prob);
  return out;
}

SmcPlan plan(const SymmetricSet& set, const ToleranceConfig& tol) {
  tol.validate();
  SmcPlan p;
  p.order = set.order();

  SymmetricSet current = set;
  for (int index = 1;; ++index) {
    const CoefficientProfile profile = coefficient_profile(current, tol);
    if (profile.largest_merged_spread > 0.0) {
      std::ostringstream note;
      note << "stage " << index << ": magnitudes differing by up to "
           << profile.largest_merged_spread << " were grouped as equal (eps_group="
           << tol.eps_group << ")";
      p.diagnostics.push_back(note.str());
    }

    StageRecord rec{index,
                    current.dim(),
                    profile.multiplicity,
                    static_cast<double>(current.dim()) / current.order(),
                    0.0,
                    current,
                    build_stage(current, tol)};
    rec.failure_probability = 1.0 - rec.realization.success_probability;
    FailureDescendant next = rec.realization.failure;
    p.stages.push_back(std::move(rec));

    if (std::holds_alternative<NoFailure>(next)) {
      p.termination = Termination::UniformCoefficients;
      break;
    }
    if (std::holds_alternative<OneDimensionalFailure>(next)) {
      p.termination = Termination::OneDimensionalFailure;
      break;
    }
    current = std::get<SymmetricSet>(std::move(next));
  }
  compute_totals(p, tol.eps_prob);
  return p;
}

ChainOutcome run_chain(const SmcPlan& p, int j, const ToleranceConfig& tol) {
  if (p.stages.empty()) throw Error(Errc::contract_violation, "plan has no stages");
  ChainOutcome out;
  ComplexVector psi = state(p.stages.front().input, j);
  double reach = 1.0;
  for (std::size_t s = 0; s < p.stages.size(); ++s) {
    const StageRecord& rec = p.stages[s];
    const StageOutcome branches = apply_two_outcome(rec.realization.two_outcome, psi, tol);
    Eigen::VectorXd det = Eigen::VectorXd::Zero(p.order);
    if (branches.success.state) {
      det = rec.realization.conclusive_measure.detection_probabilities(*branches.success.state);
      det *= reach * branches.success.probability;
    }
    out.stage_detections.push_back(det);
    reach *= branches.failure.probability;
    if (!branches.failure.state) {
      reach = 0.0;
      break;
    }
    if (s + 1 == p.stages.size()) break;
    // Restrict the failure state to the modes that survive into the next stage.
    const SymmetricSet& next = p.stages[s + 1].input;
    ComplexVector restricted(next.dim());
    for (int k = 0; k < next.dim(); ++k) {
      const int exponent = next.modes()[k].exponent;
      int found = -1;
      for (int i = 0; i < rec.input.dim(); ++i) {
        if (rec.input.modes()[i].exponent == exponent) found = i;
      }
      if (found < 0) throw Error(Errc::contract_violation, "descendant mode missing from parent");
      restricted(k) = (*branches.failure.state)(found);
    }
    psi = restricted;
  }
  out.inconclusive = reach;
  return out;
}

MeComparison compare_me(const SymmetricSet& set, const ToleranceConfig& tol) {
  const SmcPlan smc = plan(set, tol);
  const DesignReport me = me_povm(set).second;

  MeComparison out;
  out.p_correct_smc = smc.p_correct_total;
  out.me_confidence = me.confidence_per_outcome.front();
  // Equiprobable symmetric inputs: P_corr^ME = sum_j p_j Tr(rho_j Pi_j^ME)
  // coincides with the ME confidence.
  out.p_correct_me = out.me_confidence;
  for (const StageRecord& s : smc.stages) out.stage_confidences.push_back(s.confidence);
  out.inequality_holds = out.p_correct_smc <= out.p_correct_me + tol.eps_prob;
  return out;
}

}  // namespace qsmc
