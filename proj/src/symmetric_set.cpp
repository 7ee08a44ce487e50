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

#include "qsmc/symmetric_set.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qsmc {

namespace {

void validate_modes(int n, const std::vector<Mode>& modes, const ToleranceConfig& tol) {
  tol.validate();
  if (n < 1) throw Error(Errc::invalid_set, "symmetry order must be positive");
  const int d = static_cast<int>(modes.size());
  if (d < 1 || d > n) {
    throw Error(Errc::invalid_set, "number of modes must lie in 1..N (N=" + std::to_string(n) +
                                       ", D=" + std::to_string(d) + ")");
  }
  std::set<int> seen_exp, seen_pos;
  double norm2 = 0.0;
  for (const Mode& m : modes) {
    if (m.exponent < 0 || m.exponent >= n) {
      throw Error(Errc::invalid_set, "exponent " + std::to_string(m.exponent) + " outside 0..N-1");
    }
    if (m.embed_position < 0 || m.embed_position >= n) {
      throw Error(Errc::invalid_set, "embed position outside 0..N-1");
    }
    if (!seen_exp.insert(m.exponent).second) {
      throw Error(Errc::invalid_set, "duplicate exponent " + std::to_string(m.exponent));
    }
    if (!seen_pos.insert(m.embed_position).second) {
      throw Error(Errc::invalid_set, "duplicate embed position");
    }
    if (!std::isfinite(m.coefficient.real()) || !std::isfinite(m.coefficient.imag())) {
      throw Error(Errc::invalid_set, "non-finite coefficient");
    }
    if (std::abs(m.coefficient) <= tol.eps_group) {
      throw Error(Errc::invalid_set, "coefficients must be nonzero");
    }
    norm2 += std::norm(m.coefficient);
  }
  if (std::abs(norm2 - 1.0) > tol.eps_norm) {
    throw Error(Errc::invalid_set, "coefficients are not normalized (sum |c|^2 = " +
                                       std::to_string(norm2) + ")");
  }
}

}  // namespace

SymmetricSet SymmetricSet::make_root_set(int n, std::span<const Complex> coefficients,
                                         const ToleranceConfig& tol) {
  std::vector<Mode> modes;
  modes.reserve(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    modes.push_back({static_cast<int>(k), coefficients[k], static_cast<int>(k)});
  }
  validate_modes(n, modes, tol);
  return SymmetricSet(n, std::move(modes));
}

SymmetricSet SymmetricSet::from_modes(int n, std::vector<Mode> modes, const ToleranceConfig& tol) {
  validate_modes(n, modes, tol);
  return SymmetricSet(n, std::move(modes));
}

std::vector<Complex> SymmetricSet::coefficients() const {
  std::vector<Complex> out;
  for (const Mode& m : modes_) out.push_back(m.coefficient);
  return out;
}

std::vector<double> SymmetricSet::magnitudes() const {
  std::vector<double> out;
  for (const Mode& m : modes_) out.push_back(std::abs(m.coefficient));
  return out;
}

std::vector<int> SymmetricSet::exponents() const {
  std::vector<int> out;
  for (const Mode& m : modes_) out.push_back(m.exponent);
  return out;
}

std::vector<int> SymmetricSet::embed_positions() const {
  std::vector<int> out;
  for (const Mode& m : modes_) out.push_back(m.embed_position);
  return out;
}

ComplexVector state(const SymmetricSet& set, int j) {
  const int n = set.order();
  if (j < 0 || j >= n) {
    throw Error(Errc::out_of_range, "state index " + std::to_string(j) + " outside 0..N-1");
  }
  ComplexVector v(set.dim());
  for (int k = 0; k < set.dim(); ++k) {
    const Mode& m = set.modes()[k];
    const int e = (j * m.exponent) % n;
    v(k) = m.coefficient * std::polar(1.0, 2.0 * kPi * e / n);
  }
  return v;
}

std::vector<ComplexVector> states(const SymmetricSet& set) {
  std::vector<ComplexVector> out;
  out.reserve(set.order());
  for (int j = 0; j < set.order(); ++j) out.push_back(state(set, j));
  return out;
}

OperatorMatrix generator_unitary(const SymmetricSet& set) {
  OperatorMatrix u = OperatorMatrix::Zero(set.dim(), set.dim());
  for (int k = 0; k < set.dim(); ++k) {
    u(k, k) = std::polar(1.0, 2.0 * kPi * set.modes()[k].exponent / set.order());
  }
  return u;
}

OperatorMatrix prior_density(const SymmetricSet& set) {
  OperatorMatrix rho = OperatorMatrix::Zero(set.dim(), set.dim());
  for (int k = 0; k < set.dim(); ++k) rho(k, k) = std::norm(set.modes()[k].coefficient);
  return rho;
}

CoefficientProfile coefficient_profile(const SymmetricSet& set, const ToleranceConfig& tol) {
  std::vector<double> mags = set.magnitudes();
  std::sort(mags.begin(), mags.end());

  CoefficientProfile profile;
  profile.c_min = mags.front();
  std::vector<MagnitudeGroup> ascending;
  std::size_t i = 0;
  while (i < mags.size()) {
    const double anchor = mags[i];
    std::size_t j = i;
    while (j < mags.size() && mags[j] - anchor <= tol.eps_group) ++j;
    profile.largest_merged_spread = std::max(profile.largest_merged_spread, mags[j - 1] - anchor);
    ascending.push_back({anchor, static_cast<int>(j - i)});
    i = j;
  }
  profile.multiplicity = ascending.front().count;
  profile.groups.assign(ascending.rbegin(), ascending.rend());
  return profile;
}

}  // namespace qsmc
