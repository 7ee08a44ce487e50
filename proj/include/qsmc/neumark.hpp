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

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qsmc/core.hpp"
#include "qsmc/symmetric_set.hpp"

namespace qsmc {

// Two-outcome success/failure step on system (x) ancilla, system index major.
// coupling = A_s (x) I_a - A_? (x) i*sigma_y with i*sigma_y = |0><1| - |1><0|,
// so |psi>|0>_a -> A_s|psi>|0>_a + A_?|psi>|1>_a.
struct TwoOutcomeRealization {
  OperatorMatrix a_success;
  OperatorMatrix a_fail;
  OperatorMatrix phase_removal;  // W = diag(exp(-i arg c_k))
  OperatorMatrix coupling;       // 2D x 2D
};

// Projective measurement on the N-dimensional extension realizing the
// square-root POVM of the uniform success states: embed, apply F_N^{-1},
// read out the logical basis.
struct ExtendedProjective {
  int order = 0;
  std::vector<int> embedding;        // mode k -> extended position
  OperatorMatrix inverse_dft;        // F_N^{-1}
  std::vector<Complex> leakage;      // beta_k, k = 0..N-1 (beta_0 = sqrt(D'/N))
  Eigen::MatrixXd outcome_probabilities;  // row j: P(k | u_j)

  /// Embeds a mode-space vector into the N-dimensional extension.
  ComplexVector embed(const ComplexVector& mode_amplitudes) const;
  /// |<k|F^{-1}|embed(v)>|^2 for k = 0..N-1.
  Eigen::VectorXd detection_probabilities(const ComplexVector& mode_amplitudes) const;
};

struct NoFailure {};

// The failure space is spanned by a single mode: the N failure states agree
// up to a global phase and carry no information.
struct OneDimensionalFailure {
  int exponent;
  int embed_position;
};

using FailureDescendant = std::variant<NoFailure, OneDimensionalFailure, SymmetricSet>;

struct StageRealization {
  TwoOutcomeRealization two_outcome;
  std::vector<ComplexVector> success_states;  // u_j in mode space
  FailureDescendant failure;
  double success_probability = 1.0;           // D * c_min^2
  ExtendedProjective conclusive_measure;
};

struct Branch {
  double probability = 0.0;
  std::optional<ComplexVector> state;  // empty when the branch never occurs
};

struct StageOutcome {
  Branch success;
  Branch failure;
};

TwoOutcomeRealization effect_operators(const SymmetricSet& set, const ToleranceConfig& tol = {});

/// Runs an arbitrary mode-space vector through the coupling unitary with the
/// ancilla in |0> and projects the ancilla. Branch probabilities are the
/// squared norms of the projections (the input need not be normalized).
StageOutcome apply_two_outcome(const TwoOutcomeRealization& realization, const ComplexVector& psi,
                               const ToleranceConfig& tol = {});

/// Runs psi_j through the coupling unitary with the ancilla in |0> and
/// projects the ancilla. Branch states are normalized.
StageOutcome apply_stage(const TwoOutcomeRealization& realization, const SymmetricSet& set, int j,
                         const ToleranceConfig& tol = {});

/// Drops the modes in the minimal-magnitude group and renormalizes the rest
/// to C_m = sqrt((|c_m|^2 - c_min^2) / P(?)). Exponents and embed positions
/// are kept. NoFailure when every magnitude is in one group,
/// OneDimensionalFailure when one mode survives.
FailureDescendant failure_descendant(const SymmetricSet& set, const ToleranceConfig& tol = {});

/// Builds F_N^{-1} on the extension and the outcome table for the given
/// success family (state j at index j). Every state must have magnitude
/// 1/sqrt(D') on each of its D' modes, else Errc::contract_violation.
ExtendedProjective conclusive_measurement(int order, std::span<const int> embedding,
                                          std::span<const ComplexVector> success_states,
                                          const ToleranceConfig& tol = {});

/// u_j = D^{-1/2} sum_m exp(2 pi i j m_k / N) |k> for j = 0..N-1.
std::vector<ComplexVector> uniform_success_states(const SymmetricSet& set);

/// Joint probabilities P(success, k) for input psi: the coupling, projection
/// of the ancilla on |0>, F_N^{-1} on the extension, logical-basis readout.
Eigen::VectorXd conclusive_distribution(const StageRealization& stage, const ComplexVector& psi,
                                        const ToleranceConfig& tol = {});

/// Everything one maximum-confidence stage needs.
StageRealization build_stage(const SymmetricSet& set, const ToleranceConfig& tol = {});

}  // namespace qsmc
