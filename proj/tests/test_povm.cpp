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

#include <doctest.h>

#include <cmath>

#include "qsmc/povm.hpp"
#include "support/oracles.hpp"
#include "support/random_sets.hpp"

using namespace qsmc;

namespace {

SymmetricSet make(int n, std::vector<double> mags) {
  std::vector<Complex> c(mags.begin(), mags.end());
  return SymmetricSet::make_root_set(n, c);
}

SymmetricSet qutrit() { return make(4, {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)}); }
SymmetricSet qubit() { return make(3, {std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)}); }
SymmetricSet uniform_qutrit() { return make(4, std::vector<double>(3, 1.0 / std::sqrt(3.0))); }

std::vector<double> equal_priors(int n) { return std::vector<double>(n, 1.0 / n); }

}  // namespace

TEST_CASE("general MC element for symmetric input") {
  const SymmetricSet q = qutrit();
  const std::vector<ComplexVector> st = states(q);
  const auto priors = equal_priors(4);

  const OperatorMatrix e = mc_element_general(st, priors, 0, 0.05);
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) {
      const double ck = std::abs(q.coefficients()[k]), cm = std::abs(q.coefficients()[m]);
      CHECK(std::abs(e(k, m) - 0.05 / (ck * cm)) < 1e-12);
    }

  // Proportional to the reciprocal-state projector for every j.
  for (int j = 0; j < 4; ++j) {
    const OperatorMatrix ej = mc_element_general(st, priors, j, 0.2 / 4.0);
    CHECK(max_abs_diff(ej, oracle::mc_element(q, j)) < 1e-12);
    CHECK(max_confidence(st, priors, j) == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("general MC element for an orthonormal pair") {
  ComplexVector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const std::vector<ComplexVector> st = {a, b};
  const std::vector<double> priors = {0.5, 0.5};
  // rho = I/2, so a rho^-1 |b><b| rho^-1 = 4a |b><b|: a projector at a = 1/4.
  const OperatorMatrix e = mc_element_general(st, priors, 1, 0.25);
  CHECK(max_abs_diff(e, outer(b)) < 1e-14);
  CHECK(max_abs_diff(mc_element_general(st, priors, 1, 0.5), 2.0 * outer(b)) < 1e-14);
  CHECK(max_confidence(st, priors, 0) == doctest::Approx(1.0));
}

TEST_CASE("general MC element on a rank-deficient ensemble") {
  // Three states inside span{e0, e1} of a 3-dim space: fine on the support.
  ComplexVector a(3), b(3), c(3);
  a << 1.0, 0.0, 0.0;
  b << 0.0, 1.0, 0.0;
  c << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  const std::vector<double> priors = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const std::vector<ComplexVector> ok = {a, b, c};
  const OperatorMatrix e = mc_element_general(ok, priors, 0, 1.0);
  CHECK(e.row(2).norm() < 1e-14);
  CHECK(check_positive(e, ToleranceConfig{}));
}

TEST_CASE("general MC element contract errors") {
  ComplexVector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const std::vector<ComplexVector> st = {a, b};
  auto code = [&](std::vector<double> priors, int j, double w) {
    try {
      (void)mc_element_general(st, priors, j, w);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::parse_error;
  };
  CHECK(code({0.3, 0.3}, 0, 1.0) == Errc::contract_violation);
  CHECK(code({0.5, 0.5}, 0, -1.0) == Errc::contract_violation);
  CHECK(code({0.5, 0.5}, 2, 1.0) == Errc::out_of_range);
  // The state b has zero prior, so rho only covers e0 and b leaks out.
  CHECK(code({1.0, 0.0}, 0, 1.0) == Errc::support_violation);
}

TEST_CASE("symmetric MC POVM: qutrit") {
  const SymmetricSet q = qutrit();
  const auto [povm, report] = mc_povm_symmetric(q);
  REQUIRE(povm.inconclusive.has_value());
  OperatorMatrix expect = OperatorMatrix::Zero(3, 3);
  expect.diagonal() << 0.6, 1.0 / 3.0, 0.0;
  CHECK(max_abs_diff(*povm.inconclusive, expect) < 1e-14);
  CHECK(report.inconclusive_probability == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::abs((*povm.inconclusive * oracle::density(q)).trace().real() - 0.4) < 1e-12);
  for (double c : report.confidence_per_outcome) CHECK(c == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(validate_povm(povm).ok());
  for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(povm.elements[j], oracle::mc_element(q, j)) < 1e-12);
}

TEST_CASE("symmetric MC POVM: qubit and uniform") {
  const auto [qp, qr] = mc_povm_symmetric(qubit());
  CHECK(qr.inconclusive_probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(qr.confidence_per_outcome[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const SymmetricSet u = uniform_qutrit();
  const auto [mc, mcr] = mc_povm_symmetric(u);
  const auto [me, mer] = me_povm(u);
  CHECK_FALSE(mc.inconclusive.has_value());
  CHECK(mcr.inconclusive_probability == 0.0);
  for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(mc.elements[j], me.elements[j]) < 1e-12);
  CHECK(mer.confidence_per_outcome[0] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("ME POVM closed form against the square-root oracle") {
  for (const SymmetricSet& s : {qutrit(), qubit(), uniform_qutrit()}) {
    const auto [povm, report] = me_povm(s);
    CHECK_FALSE(povm.inconclusive.has_value());
    CHECK(validate_povm(povm).ok());
    double sum = 0.0;
    for (double m : s.magnitudes()) sum += m;
    const double closed = sum * sum / s.order();
    const std::vector<ComplexVector> st = states(s);
    const auto priors = equal_priors(s.order());
    for (int j = 0; j < s.order(); ++j) {
      CHECK(max_abs_diff(povm.elements[j], oracle::srm_element(s, j)) < 1e-12);
      CHECK(confidence(oracle::srm_element(s, j), st, priors, j) == doctest::Approx(closed).epsilon(1e-12));
      CHECK(report.confidence_per_outcome[j] == doctest::Approx(closed).epsilon(1e-12));
    }
  }
  const double qutrit_me = std::pow(std::sqrt(0.5) + std::sqrt(0.3) + std::sqrt(0.2), 2) / 4.0;
  CHECK(qutrit_me == doctest::Approx(0.72424).epsilon(1e-5));
  CHECK(me_povm(qutrit()).second.confidence_per_outcome[0] == doctest::Approx(qutrit_me).epsilon(1e-12));
  const double qubit_me = std::pow(std::sqrt(2.0 / 3.0) + std::sqrt(1.0 / 3.0), 2) / 3.0;
  CHECK(qubit_me == doctest::Approx(0.647603).epsilon(1e-6));
}

TEST_CASE("validate_povm reports violations") {
  const auto [povm, report] = mc_povm_symmetric(qutrit());
  CHECK(validate_povm(povm).ok());

  Povm scaled = povm;
  for (OperatorMatrix& e : scaled.elements) e *= 1.01;
  *scaled.inconclusive *= 1.01;
  const ValidationReport r1 = validate_povm(scaled);
  REQUIRE_FALSE(r1.ok());
  bool incomplete = false;
  for (const Violation& v : r1.violations) incomplete |= v.kind == ViolationKind::Incomplete;
  CHECK(incomplete);

  Povm bent = povm;
  // Push one eigenvalue of Pi_? negative while keeping completeness.
  (*bent.inconclusive)(2, 2) -= 1e-6;
  bent.elements[0](2, 2) += 1e-6;
  const ValidationReport r2 = validate_povm(bent);
  bool negative = false;
  for (const Violation& v : r2.violations) {
    if (v.kind == ViolationKind::NotPositive) {
      negative = true;
      CHECK(v.element == -1);
      CHECK(v.magnitude == doctest::Approx(1e-6).epsilon(1e-3));
    }
  }
  CHECK(negative);

  Povm shape = povm;
  shape.elements[1] = OperatorMatrix::Identity(2, 2);
  CHECK_FALSE(validate_povm(shape).ok());
}

TEST_CASE("report recomputed from matrices agrees with closed forms") {
  testing::RandomSets gen(99);
  for (int i = 0; i < 40; ++i) {
    const SymmetricSet s = gen.next();
    const auto [povm, closed] = mc_povm_symmetric(s);
    const DesignReport measured = report_from_povm(povm, s, Strategy::MaxConfidence);
    CHECK(std::abs(measured.inconclusive_probability - closed.inconclusive_probability) < 1e-10);
    for (int j = 0; j < s.order(); ++j) {
      CHECK(std::abs(measured.confidence_per_outcome[j] - closed.confidence_per_outcome[j]) < 1e-10);
    }
    // Every outcome fires equally often.
    const OperatorMatrix rho = prior_density(s);
    const double t0 = (povm.elements[0] * rho).trace().real();
    for (const OperatorMatrix& e : povm.elements) CHECK(std::abs((e * rho).trace().real() - t0) < 1e-10);
  }
}
