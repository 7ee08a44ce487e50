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

#pragma once

#include <string>
#include <vector>

#include "qsmc/neumark.hpp"
#include "qsmc/symmetric_set.hpp"

namespace qsmc {

struct StageRecord {
  int index = 0;              // 1-based
  int dim = 0;                // D_s
  int multiplicity = 0;       // d_s
  double confidence = 0.0;    // D_s / N
  double failure_probability = 0.0;  // 1 - D_s C_min,s^2, 0 on a uniform stage
  SymmetricSet input;         // the set this stage discriminates
  StageRealization realization;
};

enum class Termination { UniformCoefficients, OneDimensionalFailure };

const char* to_string(Termination t);

struct SmcPlan {
  int order = 0;
  std::vector<StageRecord> stages;
  Termination termination = Termination::UniformCoefficients;
  double p_correct_total = 0.0;
  double p_inconclusive_total = 0.0;
  double p_error_total = 0.0;
  // Non-fatal notes, e.g. near-degenerate magnitudes merged by eps_group.
  std::vector<std::string> diagnostics;

  /// Copy keeping only the first `count` stages, with totals recomputed as if
  /// a failure after the last kept stage were final.
  SmcPlan truncated(int count, double eps_prob = 1e-10) const;
};

/// Sequential maximum-confidence plan: one stage per descent through the
/// failure sets, ending on uniform coefficients or a one-dimensional failure.
SmcPlan plan(const SymmetricSet& set, const ToleranceConfig& tol = {});

// Joint detection probabilities when psi_j runs through every stage of the
// plan, each failure branch feeding the next stage.
struct ChainOutcome {
  std::vector<Eigen::VectorXd> stage_detections;  // stage s: P(reach s, succeed, detector k)
  double inconclusive = 0.0;
};

ChainOutcome run_chain(const SmcPlan& plan, int j, const ToleranceConfig& tol = {});

struct MeComparison {
  double p_correct_smc = 0.0;
  double p_correct_me = 0.0;
  std::vector<double> stage_confidences;
  double me_confidence = 0.0;
  bool inequality_holds = true;  // p_correct_smc <= p_correct_me + eps_prob
};

MeComparison compare_me(const SymmetricSet& set, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Four-state qutrit sweep
// ---------------------------------------------------------------------------

struct QutritPoint {
  double c0;
  double c1;
};

struct SweepRow {
  double c0, c1;
  double mc_conf_stage1, mc_conf_stage2, me_conf;
  double p_fail_stage1, p_fail_stage2;
  double p_corr_stage1_only, p_corr_smc, p_corr_me, p_inconclusive_smc;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // feasible points, input order
  std::vector<std::string> skipped;  // one diagnostic per infeasible point
};

/// Closed-form qutrit figures per point with c2 = sqrt(1 - c0^2 - c1^2).
/// A point needs c0, c1 > 0 and c0^2 + c1^2 < 1 with c2 above eps_group.
/// Rows are independent; evaluated with OpenMP, output in input order.
SweepResult sweep_qutrit(const std::vector<QutritPoint>& grid, const ToleranceConfig& tol = {});

/// Single-threaded reference for sweep_qutrit.
SweepResult sweep_qutrit_serial(const std::vector<QutritPoint>& grid,
                                const ToleranceConfig& tol = {});

/// Cartesian grid, c0 outer loop: count0 x count1 points over the closed ranges.
std::vector<QutritPoint> make_grid(double c0_lo, double c0_hi, int count0, double c1_lo,
                                   double c1_hi, int count1);

/// Fixed CSV header, comma separated.
const std::vector<std::string>& sweep_columns();

}  // namespace qsmc
