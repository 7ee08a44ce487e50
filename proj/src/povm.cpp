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

#include "qsmc/povm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsmc {

namespace {

struct SupportInverse {
  OperatorMatrix inverse;
  OperatorMatrix projector;
};

OperatorMatrix prior_mixture(std::span<const ComplexVector> states, std::span<const double> priors) {
  const Eigen::Index dim = states.front().size();
  OperatorMatrix rho = OperatorMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) rho += priors[i] * outer(states[i]);
  return rho;
}

void check_ensemble(std::span<const ComplexVector> states, std::span<const double> priors, int j,
                    const ToleranceConfig& tol) {
  if (states.empty()) throw Error(Errc::contract_violation, "empty ensemble");
  if (states.size() != priors.size()) {
    throw Error(Errc::dimension_mismatch, "states and priors differ in length");
  }
  if (j < 0 || j >= static_cast<int>(states.size())) {
    throw Error(Errc::out_of_range, "outcome index outside the ensemble");
  }
  const Eigen::Index dim = states.front().size();
  CompensatedSum total;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim) throw Error(Errc::dimension_mismatch, "states differ in dimension");
    if (priors[i] < 0.0) throw Error(Errc::contract_violation, "negative prior");
    total.add(priors[i]);
  }
  if (std::abs(total.value() - 1.0) > tol.eps_prob) {
    throw Error(Errc::contract_violation, "priors do not sum to 1");
  }
}

// Pseudo-inverse of rho restricted to eigenvalues above eps_psd. Every state
// must lie inside that support.
SupportInverse support_inverse(std::span<const ComplexVector> states, const OperatorMatrix& rho,
                               const ToleranceConfig& tol) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(rho);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const Eigen::Index dim = rho.rows();
  SupportInverse out{OperatorMatrix::Zero(dim, dim), OperatorMatrix::Zero(dim, dim)};
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (vals(k) > tol.eps_psd) {
      const ComplexVector v = vecs.col(k);
      out.inverse += (1.0 / vals(k)) * outer(v);
      out.projector += outer(v);
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double leak = (states[i] - out.projector * states[i]).norm();
    if (leak > tol.eps_norm) {
      std::ostringstream msg;
      msg << "state " << i << " has weight " << leak << " outside the support of rho";
      throw Error(Errc::support_violation, msg.str());
    }
  }
  return out;
}

}  // namespace

OperatorMatrix Povm::total() const {
  OperatorMatrix sum = OperatorMatrix::Zero(dim, dim);
  for (const auto& e : elements) sum += e;
  if (inconclusive) sum += *inconclusive;
  return sum;
}

const char* to_string(Strategy s) {
  return s == Strategy::MaxConfidence ? "MaxConfidence" : "MinError";
}

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Shape: return "shape";
    case ViolationKind::NotHermitian: return "not-hermitian";
    case ViolationKind::NotPositive: return "not-positive";
    case ViolationKind::Incomplete: return "incomplete";
  }
  return "unknown";
}

OperatorMatrix mc_element_general(std::span<const ComplexVector> states,
                                  std::span<const double> priors, int j, double weight,
                                  const ToleranceConfig& tol) {
  check_ensemble(states, priors, j, tol);
  if (!(weight > 0.0)) throw Error(Errc::contract_violation, "weight must be positive");
  const OperatorMatrix rho = prior_mixture(states, priors);
  const SupportInverse inv = support_inverse(states, rho, tol);
  return weight * inv.inverse * outer(states[j]) * inv.inverse;
}

double max_confidence(std::span<const ComplexVector> states, std::span<const double> priors, int j,
                      const ToleranceConfig& tol) {
  check_ensemble(states, priors, j, tol);
  const OperatorMatrix rho = prior_mixture(states, priors);
  const SupportInverse inv = support_inverse(states, rho, tol);
  const double value = priors[j] * states[j].dot(inv.inverse * states[j]).real();
  return clamp_probability(value, tol.eps_prob);
}

double confidence(const OperatorMatrix& element, std::span<const ComplexVector> states,
                  std::span<const double> priors, int j) {
  const double hit = states[j].dot(element * states[j]).real();
  CompensatedSum total;
  for (std::size_t i = 0; i < states.size(); ++i) {
    total.add(priors[i] * states[i].dot(element * states[i]).real());
  }
  if (total.value() <= 0.0) return 0.0;
  return priors[j] * hit / total.value();
}

std::pair<Povm, DesignReport> mc_povm_symmetric(const SymmetricSet& set, const ToleranceConfig& tol) {
  const int n = set.order();
  const int d = set.dim();
  const CoefficientProfile profile = coefficient_profile(set, tol);
  const double cmin2 = profile.c_min * profile.c_min;
  const double weight = cmin2 / n;

  Povm povm;
  povm.dim = d;
  for (int j = 0; j < n; ++j) {
    ComplexVector phi(d);
    for (int k = 0; k < d; ++k) {
      const Mode& m = set.modes()[k];
      const int e = (j * m.exponent) % n;
      phi(k) = std::polar(1.0, 2.0 * kPi * e / n) / std::conj(m.coefficient);
    }
    povm.elements.push_back(weight * outer(phi));
  }

  OperatorMatrix inconclusive = OperatorMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    inconclusive(k, k) = std::max(0.0, 1.0 - cmin2 / std::norm(set.modes()[k].coefficient));
  }
  if (!(profile.uniform() && inconclusive.trace().real() <= tol.eps_prob)) {
    povm.inconclusive = inconclusive;
  }

  DesignReport report;
  report.strategy = Strategy::MaxConfidence;
  report.confidence_per_outcome.assign(n, static_cast<double>(d) / n);
  report.inconclusive_probability =
      povm.inconclusive ? clamp_probability(1.0 - d * cmin2, tol.eps_prob) : 0.0;
  return {std::move(povm), std::move(report)};
}

std::pair<Povm, DesignReport> me_povm(const SymmetricSet& set) {
  const int n = set.order();
  const int d = set.dim();
  Povm povm;
  povm.dim = d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < n; ++j) {
    ComplexVector mu(d);
    for (int k = 0; k < d; ++k) {
      const Mode& m = set.modes()[k];
      const int e = (j * m.exponent) % n;
      mu(k) = std::polar(amp, std::arg(m.coefficient) + 2.0 * kPi * e / n);
    }
    povm.elements.push_back((static_cast<double>(d) / n) * outer(mu));
  }

  CompensatedSum sum_abs;
  for (double c : set.magnitudes()) sum_abs.add(c);
  DesignReport report;
  report.strategy = Strategy::MinError;
  report.confidence_per_outcome.assign(n, sum_abs.value() * sum_abs.value() / n);
  report.inconclusive_probability = 0.0;
  return {std::move(povm), std::move(report)};
}

DesignReport report_from_povm(const Povm& povm, const SymmetricSet& set, Strategy strategy) {
  const std::vector<ComplexVector> psi = states(set);
  const std::vector<double> priors(set.order(), 1.0 / set.order());
  DesignReport report;
  report.strategy = strategy;
  for (std::size_t j = 0; j < povm.elements.size(); ++j) {
    report.confidence_per_outcome.push_back(
        confidence(povm.elements[j], psi, priors, static_cast<int>(j)));
  }
  if (povm.inconclusive) {
    report.inconclusive_probability = (*povm.inconclusive * prior_density(set)).trace().real();
  }
  return report;
}

ValidationReport validate_povm(const Povm& povm, const ToleranceConfig& tol) {
  ValidationReport report;
  auto check_element = [&](const OperatorMatrix& e, int index) {
    if (e.rows() != povm.dim || e.cols() != povm.dim) {
      report.violations.push_back({ViolationKind::Shape, index, 0.0,
                                   "element is not " + std::to_string(povm.dim) + "x" +
                                       std::to_string(povm.dim)});
      return false;
    }
    const double asym = povm.dim ? max_abs_diff(e, e.adjoint()) : 0.0;
    if (asym > tol.eps_herm) {
      report.violations.push_back(
          {ViolationKind::NotHermitian, index, asym, "element deviates from its adjoint"});
      return true;
    }
    const double lowest = min_eigenvalue(e);
    if (lowest < -tol.eps_psd) {
      report.violations.push_back(
          {ViolationKind::NotPositive, index, -lowest, "element has a negative eigenvalue"});
    }
    return true;
  };

  bool shapes_ok = true;
  for (std::size_t j = 0; j < povm.elements.size(); ++j) {
    shapes_ok &= check_element(povm.elements[j], static_cast<int>(j));
  }
  if (povm.inconclusive) shapes_ok &= check_element(*povm.inconclusive, -1);
  if (shapes_ok) {
    const double gap = max_abs_diff(povm.total(), identity(povm.dim));
    if (gap > tol.eps_unitary) {
      report.violations.push_back(
          {ViolationKind::Incomplete, -1, gap, "elements do not sum to the identity"});
    }
  }
  return report;
}

}  // namespace qsmc
