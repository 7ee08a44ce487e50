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
#include <string>
#include <utility>
#include <vector>

#include "qsmc/core.hpp"
#include "qsmc/symmetric_set.hpp"

namespace qsmc {

// Outcome j of `elements` identifies state j; `inconclusive` is the "?" element.
struct Povm {
  int dim = 0;
  std::vector<OperatorMatrix> elements;
  std::optional<OperatorMatrix> inconclusive;

  OperatorMatrix total() const;
};

enum class Strategy { MaxConfidence, MinError };

const char* to_string(Strategy s);

struct DesignReport {
  std::vector<double> confidence_per_outcome;
  double inconclusive_probability = 0.0;
  Strategy strategy = Strategy::MaxConfidence;
};

// ---------------------------------------------------------------------------
// General pure-state maximum-confidence element
// ---------------------------------------------------------------------------

/// weight * rho^+ |psi_j><psi_j| rho^+, where rho = sum_i p_i |psi_i><psi_i|
/// and rho^+ is the inverse on the support of rho (eigenvalues > eps_psd).
/// Throws Errc::support_violation if any state has a component outside that
/// support, Errc::contract_violation for bad priors or weight.
OperatorMatrix mc_element_general(std::span<const ComplexVector> states,
                                  std::span<const double> priors, int j, double weight,
                                  const ToleranceConfig& tol = {});

/// p_j <psi_j| rho^+ |psi_j>.
double max_confidence(std::span<const ComplexVector> states, std::span<const double> priors, int j,
                      const ToleranceConfig& tol = {});

/// Bayes posterior p_j Tr(E rho_j) / Tr(E rho) for an arbitrary element E.
/// Returns 0 when the outcome never fires.
double confidence(const OperatorMatrix& element, std::span<const ComplexVector> states,
                  std::span<const double> priors, int j);

// ---------------------------------------------------------------------------
// Symmetric equiprobable sets
// ---------------------------------------------------------------------------

/// Optimal MC POVM: Pi_j = (c_min^2/N) |phi_j><phi_j| with reciprocal states
/// phi_j = sum_k (c_k^*)^{-1} U^j |k>, plus
/// Pi_? = sum_m (1 - c_min^2/|c_m|^2) |m><m|. The report carries the closed
/// forms: confidence D/N per outcome and P(?) = 1 - D c_min^2. When every
/// magnitude falls in one group and Pi_? has trace below eps_prob, the
/// inconclusive element is omitted.
std::pair<Povm, DesignReport> mc_povm_symmetric(const SymmetricSet& set,
                                                const ToleranceConfig& tol = {});

/// Square-root measurement (D/N)|mu_j><mu_j|,
/// mu_j = D^{-1/2} sum_k exp(i arg c_k) exp(2 pi i j m_k / N) |k>.
/// Report confidence is (sum_m |c_m|)^2 / N for every outcome.
std::pair<Povm, DesignReport> me_povm(const SymmetricSet& set);

/// Confidence and P(?) recomputed from the matrices of `povm` against the
/// equiprobable states of `set`.
DesignReport report_from_povm(const Povm& povm, const SymmetricSet& set, Strategy strategy);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationKind { Shape, NotHermitian, NotPositive, Incomplete };

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int element;  // outcome index, -1 for the inconclusive element or the whole POVM
  double magnitude;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// PSD check per element (eps_herm/eps_psd) and completeness (eps_unitary,
/// max-norm). Never throws on bad input; everything lands in the report.
ValidationReport validate_povm(const Povm& povm, const ToleranceConfig& tol = {});

}  // namespace qsmc
