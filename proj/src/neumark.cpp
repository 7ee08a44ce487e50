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

#include "qsmc/neumark.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsmc {

ComplexVector ExtendedProjective::embed(const ComplexVector& mode_amplitudes) const {
  if (mode_amplitudes.size() != static_cast<Eigen::Index>(embedding.size())) {
    throw Error(Errc::dimension_mismatch, "vector does not match the embedding");
  }
  ComplexVector ext = ComplexVector::Zero(order);
  for (std::size_t k = 0; k < embedding.size(); ++k) ext(embedding[k]) = mode_amplitudes(k);
  return ext;
}

Eigen::VectorXd ExtendedProjective::detection_probabilities(
    const ComplexVector& mode_amplitudes) const {
  return (inverse_dft * embed(mode_amplitudes)).cwiseAbs2();
}

TwoOutcomeRealization effect_operators(const SymmetricSet& set, const ToleranceConfig& tol) {
  const int d = set.dim();
  const double cmin = coefficient_profile(set, tol).c_min;

  TwoOutcomeRealization r;
  r.phase_removal = OperatorMatrix::Zero(d, d);
  OperatorMatrix succ = OperatorMatrix::Zero(d, d);
  OperatorMatrix fail = OperatorMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const Complex c = set.modes()[k].coefficient;
    const double ratio = std::min(1.0, cmin / std::abs(c));
    r.phase_removal(k, k) = std::polar(1.0, -std::arg(c));
    succ(k, k) = ratio;
    fail(k, k) = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  }
  r.a_success = r.phase_removal * succ;
  r.a_fail = r.phase_removal * fail;

  OperatorMatrix i_sigma_y(2, 2);
  i_sigma_y << 0.0, 1.0, -1.0, 0.0;
  r.coupling = tensor(r.a_success, identity(2)) - tensor(r.a_fail, i_sigma_y);
  if (!is_unitary(r.coupling, tol.eps_unitary)) {
    throw Error(Errc::not_unitary, "system-ancilla coupling failed the unitarity check");
  }
  return r;
}

StageOutcome apply_two_outcome(const TwoOutcomeRealization& realization, const ComplexVector& psi,
                               const ToleranceConfig& tol) {
  const Eigen::Index d = psi.size();
  if (realization.coupling.rows() != 2 * d) {
    throw Error(Errc::dimension_mismatch, "input does not match the realization");
  }
  ComplexVector ancilla0(2);
  ancilla0 << 1.0, 0.0;
  const ComplexVector out = qsmc::apply(realization.coupling, tensor(psi, ancilla0));

  ComplexVector succ(d), fail(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    succ(k) = out(2 * k);
    fail(k) = out(2 * k + 1);
  }
  auto make_branch = [&](const ComplexVector& v) {
    Branch b;
    b.probability = clamp_probability(v.squaredNorm(), tol.eps_prob);
    if (b.probability > tol.eps_prob) b.state = v / v.norm();
    return b;
  };
  return {make_branch(succ), make_branch(fail)};
}

StageOutcome apply_stage(const TwoOutcomeRealization& realization, const SymmetricSet& set, int j,
                         const ToleranceConfig& tol) {
  if (realization.coupling.rows() != 2 * set.dim()) {
    throw Error(Errc::dimension_mismatch, "realization was built for another set");
  }
  return apply_two_outcome(realization, state(set, j), tol);
}

Eigen::VectorXd conclusive_distribution(const StageRealization& stage, const ComplexVector& psi,
                                        const ToleranceConfig& tol) {
  const StageOutcome out = apply_two_outcome(stage.two_outcome, psi, tol);
  if (!out.success.state) return Eigen::VectorXd::Zero(stage.conclusive_measure.order);
  return out.success.probability *
         stage.conclusive_measure.detection_probabilities(*out.success.state);
}

FailureDescendant failure_descendant(const SymmetricSet& set, const ToleranceConfig& tol) {
  const CoefficientProfile profile = coefficient_profile(set, tol);
  if (profile.uniform()) return NoFailure{};

  const double cmin = profile.c_min;
  std::vector<Mode> kept;
  double norm2 = 0.0;
  for (const Mode& m : set.modes()) {
    const double mag = std::abs(m.coefficient);
    if (mag - cmin <= tol.eps_group) continue;
    const double w = mag * mag - cmin * cmin;
    kept.push_back({m.exponent, Complex(std::sqrt(w), 0.0), m.embed_position});
    norm2 += w;
  }
  if (kept.size() == 1) return OneDimensionalFailure{kept[0].exponent, kept[0].embed_position};

  // norm2 equals P(?) up to the contribution of modes merged into the c_min
  // group; renormalizing over the survivors keeps the descendant exact.
  const double scale = 1.0 / std::sqrt(norm2);
  for (Mode& m : kept) m.coefficient *= scale;
  return SymmetricSet::from_modes(set.order(), std::move(kept), tol);
}

std::vector<ComplexVector> uniform_success_states(const SymmetricSet& set) {
  const int n = set.order();
  const int d = set.dim();
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexVector> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    ComplexVector u(d);
    for (int k = 0; k < d; ++k) {
      const int e = (j * set.modes()[k].exponent) % n;
      u(k) = std::polar(amp, 2.0 * kPi * e / n);
    }
    out.push_back(std::move(u));
  }
  return out;
}

ExtendedProjective conclusive_measurement(int order, std::span<const int> embedding,
                                          std::span<const ComplexVector> success_states,
                                          const ToleranceConfig& tol) {
  const int dprime = static_cast<int>(embedding.size());
  if (dprime < 1 || dprime > order) {
    throw Error(Errc::invalid_dimension, "embedding must hold 1..N positions");
  }
  for (int p : embedding) {
    if (p < 0 || p >= order) throw Error(Errc::out_of_range, "embed position outside 0..N-1");
  }
  const double expected = 1.0 / std::sqrt(static_cast<double>(dprime));
  for (const ComplexVector& u : success_states) {
    if (u.size() != dprime) throw Error(Errc::dimension_mismatch, "success state size");
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      if (std::abs(std::abs(u(k)) - expected) > tol.eps_norm) {
        throw Error(Errc::contract_violation,
                    "success states must have uniform magnitudes 1/sqrt(D')");
      }
    }
  }

  ExtendedProjective m;
  m.order = order;
  m.embedding.assign(embedding.begin(), embedding.end());
  m.inverse_dft = dft_matrix(order).adjoint();

  const double scale = 1.0 / std::sqrt(static_cast<double>(order) * dprime);
  m.leakage.resize(order);
  for (int k = 0; k < order; ++k) {
    Complex sum = 0.0;
    for (int p : embedding) sum += std::polar(1.0, 2.0 * kPi * ((p * k) % order) / order);
    m.leakage[k] = scale * sum;
  }

  m.outcome_probabilities.resize(static_cast<Eigen::Index>(success_states.size()), order);
  for (std::size_t j = 0; j < success_states.size(); ++j) {
    m.outcome_probabilities.row(static_cast<Eigen::Index>(j)) =
        m.detection_probabilities(success_states[j]).transpose();
  }
  return m;
}

StageRealization build_stage(const SymmetricSet& set, const ToleranceConfig& tol) {
  StageRealization stage;
  stage.two_outcome = effect_operators(set, tol);
  stage.success_states = uniform_success_states(set);
  stage.failure = failure_descendant(set, tol);
  const CoefficientProfile profile = coefficient_profile(set, tol);
  stage.success_probability = std::holds_alternative<NoFailure>(stage.failure)
                                  ? 1.0
                                  : clamp_probability(set.dim() * profile.c_min * profile.c_min,
                                                      tol.eps_prob);
  const std::vector<int> positions = set.embed_positions();
  stage.conclusive_measure =
      conclusive_measurement(set.order(), positions, stage.success_states, tol);
  return stage;
}

}  // namespace qsmc
