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

#include "qsmc/neumark.hpp"
#include "qsmc/povm.hpp"
#include "support/oracles.hpp"
#include "support/random_sets.hpp"

using namespace qsmc;

namespace {

const Complex I1(0.0, 1.0);

SymmetricSet make(int n, std::vector<Complex> c) { return SymmetricSet::make_root_set(n, c); }
SymmetricSet qutrit() { return make(4, {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)}); }
SymmetricSet qubit() { return make(3, {std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)}); }
SymmetricSet uniform_qutrit() { return make(4, std::vector<Complex>(3, 1.0 / std::sqrt(3.0))); }

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(xs.size());
  int i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("effect operators") {
  const TwoOutcomeRealization r = effect_operators(qutrit());
  CHECK(std::abs(r.a_success(0, 0) - std::sqrt(0.2 / 0.5)) < 1e-15);
  CHECK(std::abs(r.a_success(1, 1) - std::sqrt(0.2 / 0.3)) < 1e-15);
  CHECK(std::abs(r.a_success(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(r.a_success(0, 0) - 0.63246) < 1e-5);
  CHECK(std::abs(r.a_success(1, 1) - 0.81650) < 1e-5);
  const OperatorMatrix sum = r.a_success.adjoint() * r.a_success + r.a_fail.adjoint() * r.a_fail;
  CHECK(max_abs_diff(sum, identity(3)) < 1e-14);
  CHECK(is_unitary(r.coupling, 1e-14));

  // Coupling built independently from the Kronecker oracle.
  OperatorMatrix isy(2, 2);
  isy << 0.0, 1.0, -1.0, 0.0;
  const OperatorMatrix expect = oracle::kron(r.a_success, identity(2)) - oracle::kron(r.a_fail, isy);
  CHECK(max_abs_diff(r.coupling, expect) < 1e-15);

  const TwoOutcomeRealization u = effect_operators(uniform_qutrit());
  CHECK(max_abs_diff(u.a_success, identity(3)) < 1e-14);
  CHECK(u.a_fail.norm() < 1e-14);
}

TEST_CASE("phase removal") {
  const SymmetricSet s = make(5, {std::polar(std::sqrt(0.5), 0.3), std::polar(std::sqrt(0.3), -1.1),
                                  std::polar(std::sqrt(0.2), 2.0)});
  const TwoOutcomeRealization r = effect_operators(s);
  for (int j = 0; j < 5; ++j) {
    const ComplexVector w = r.phase_removal * state(s, j);
    for (int k = 0; k < 3; ++k) {
      const Complex sym = std::polar(1.0, 2.0 * kPi * j * k / 5.0);
      const Complex ratio = w(k) / sym;
      CHECK(std::abs(ratio.imag()) < 1e-14);
      CHECK(ratio.real() > 0.0);
    }
  }
}

TEST_CASE("apply_stage: qutrit, uniform, qubit") {
  const SymmetricSet q = qutrit();
  const StageOutcome o = apply_stage(effect_operators(q), q, 0);
  CHECK(o.success.probability == doctest::Approx(0.6).epsilon(1e-12));
  CHECK((*o.success.state - vec({1.0, 1.0, 1.0}) / std::sqrt(3.0)).norm() < 1e-12);
  CHECK(o.failure.probability == doctest::Approx(0.4).epsilon(1e-12));
  CHECK((*o.failure.state - vec({std::sqrt(0.75), 0.5, 0.0})).norm() < 1e-12);

  const SymmetricSet u = uniform_qutrit();
  const StageOutcome ou = apply_stage(effect_operators(u), u, 0);
  CHECK(ou.success.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ou.failure.probability < 1e-12);
  CHECK_FALSE(ou.failure.state.has_value());

  const SymmetricSet b = qubit();
  const StageOutcome ob = apply_stage(effect_operators(b), b, 0);
  CHECK(ob.success.probability == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK((*ob.success.state - vec({1.0, 1.0}) / std::sqrt(2.0)).norm() < 1e-12);
  CHECK(ob.failure.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK((*ob.failure.state - vec({1.0, 0.0})).norm() < 1e-12);

  CHECK_THROWS_AS((void)apply_stage(effect_operators(q), q, 4), Error);
}

TEST_CASE("apply_stage matches explicit coupling and projection") {
  const SymmetricSet q = qutrit();
  const TwoOutcomeRealization r = effect_operators(q);
  for (int j = 0; j < 4; ++j) {
    const ComplexVector in = oracle::kron(oracle::state(q, j), vec({1.0, 0.0}));
    const ComplexVector out = r.coupling * in;
    ComplexVector s(3), f(3);
    for (int k = 0; k < 3; ++k) {
      s(k) = out(2 * k);
      f(k) = out(2 * k + 1);
    }
    const StageOutcome o = apply_stage(r, q, j);
    CHECK(std::abs(o.success.probability - s.squaredNorm()) < 1e-14);
    CHECK(std::abs(o.failure.probability - f.squaredNorm()) < 1e-14);
    CHECK((*o.success.state - s.normalized()).norm() < 1e-12);
    CHECK((*o.failure.state - f.normalized()).norm() < 1e-12);
  }
}

TEST_CASE("failure descendants") {
  const FailureDescendant fd = failure_descendant(qutrit());
  REQUIRE(std::holds_alternative<SymmetricSet>(fd));
  const SymmetricSet& xi = std::get<SymmetricSet>(fd);
  CHECK(xi.order() == 4);
  CHECK(xi.exponents() == std::vector<int>{0, 1});
  CHECK(xi.embed_positions() == std::vector<int>{0, 1});
  CHECK(std::abs(xi.coefficients()[0] - std::sqrt(0.75)) < 1e-12);
  CHECK(std::abs(xi.coefficients()[1] - 0.5) < 1e-12);

  const SymmetricSet one_dim = make(4, {std::sqrt(0.5), std::sqrt(0.25), std::sqrt(0.25)});
  const FailureDescendant fo = failure_descendant(one_dim);
  REQUIRE(std::holds_alternative<OneDimensionalFailure>(fo));
  CHECK(std::get<OneDimensionalFailure>(fo).exponent == 0);

  CHECK(std::holds_alternative<NoFailure>(failure_descendant(uniform_qutrit())));

  // Non-contiguous survivors keep their exponents.
  const SymmetricSet mixed = make(6, {std::sqrt(0.1), std::sqrt(0.4), std::sqrt(0.1), std::sqrt(0.4)});
  const FailureDescendant fm = failure_descendant(mixed);
  const SymmetricSet& m = std::get<SymmetricSet>(fm);
  CHECK(m.exponents() == std::vector<int>{1, 3});
  CHECK(m.embed_positions() == std::vector<int>{1, 3});
}

TEST_CASE("conclusive measurement tables") {
  const SymmetricSet u = uniform_qutrit();
  const StageRealization st = build_stage(u);
  const Eigen::MatrixXd& p = st.conclusive_measure.outcome_probabilities;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) CHECK(std::abs(p(j, k) - (j == k ? 0.75 : 1.0 / 12.0)) < 1e-12);
  CHECK(std::abs(st.conclusive_measure.leakage[0] - std::sqrt(0.75)) < 1e-12);

  const FailureDescendant fx = failure_descendant(qutrit());
  const SymmetricSet& xi = std::get<SymmetricSet>(fx);
  const std::vector<ComplexVector> u2 = uniform_success_states(xi);
  const std::vector<int> pos = xi.embed_positions();
  const ExtendedProjective m2 = conclusive_measurement(4, pos, u2);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const int diff = ((j - k) % 4 + 4) % 4;
      const double expect = diff == 0 ? 0.5 : diff == 2 ? 0.0 : 0.25;
      CHECK(std::abs(m2.outcome_probabilities(j, k) - expect) < 1e-12);
    }

  // D' = N: orthonormal DFT columns.
  const SymmetricSet full = make(4, std::vector<Complex>(4, 0.5));
  const Eigen::MatrixXd& pf = build_stage(full).conclusive_measure.outcome_probabilities;
  CHECK((pf - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  // Leakage amplitudes from the explicit sum.
  const ExtendedProjective& m1 = st.conclusive_measure;
  for (int k = 0; k < 4; ++k) {
    Complex b = 0.0;
    for (int m : {0, 1, 2}) b += std::polar(1.0, 2.0 * kPi * m * k / 4.0);
    b /= std::sqrt(12.0);
    CHECK(std::abs(m1.leakage[k] - b) < 1e-12);
  }

  std::vector<ComplexVector> bad = u2;
  bad[0](0) *= 1.1;
  CHECK_THROWS_AS((void)conclusive_measurement(4, pos, bad), Error);
}

TEST_CASE("property: chain statistics equal the POVM on random sets") {
  testing::RandomSets gen(31337);
  for (int i = 0; i < 60; ++i) {
    const SymmetricSet s = gen.next();
    const StageRealization st = build_stage(s);
    const auto [povm, report] = mc_povm_symmetric(s);
    const CoefficientProfile prof = coefficient_profile(s);
    CHECK(std::abs(st.success_probability - s.dim() * prof.c_min * prof.c_min) < 1e-10);

    const Eigen::MatrixXd& table = st.conclusive_measure.outcome_probabilities;
    for (int j = 0; j < s.order(); ++j) {
      CHECK(std::abs(table.row(j).sum() - 1.0) < 1e-10);
      CHECK(std::abs(table(j, j) - static_cast<double>(s.dim()) / s.order()) < 1e-10);

      const ComplexVector psi = state(s, j);
      const Eigen::VectorXd dist = conclusive_distribution(st, psi);
      for (int k = 0; k < s.order(); ++k) {
        const double tr = (povm.elements[k] * outer(psi)).trace().real();
        CHECK(std::abs(dist(k) - tr) < 1e-10);
      }
      const StageOutcome o = apply_stage(st.two_outcome, s, j);
      CHECK(std::abs(o.success.probability - st.success_probability) < 1e-10);
    }

    if (std::holds_alternative<SymmetricSet>(st.failure)) {
      const SymmetricSet& xi = std::get<SymmetricSet>(st.failure);
      const OperatorMatrix g = generator_unitary(xi);
      for (int j = 0; j < s.order(); ++j) {
        CHECK((g * state(xi, j) - state(xi, (j + 1) % s.order())).norm() < 1e-10);
        // The descendant is the normalized failure branch restricted to its modes.
        const StageOutcome o = apply_stage(st.two_outcome, s, j);
        ComplexVector restricted(xi.dim());
        int r = 0;
        for (int k = 0; k < s.dim(); ++k) {
          if (s.exponents()[k] == xi.exponents()[r]) {
            restricted(r) = (*o.failure.state)(k);
            if (++r == xi.dim()) break;
          }
        }
        CHECK(std::abs(std::abs(restricted.dot(state(xi, j))) - 1.0) < 1e-10);
      }
    }
  }
}
