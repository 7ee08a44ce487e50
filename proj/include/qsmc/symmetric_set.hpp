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

#include <span>
#include <utility>
#include <vector>

#include "qsmc/core.hpp"

namespace qsmc {

// One populated basis direction of a symmetric set. The generator acts on it
// as exp(2*pi*i*exponent/N); embed_position is where the mode sits in the
// N-dimensional extended space used by the conclusive measurement.
struct Mode {
  int exponent = 0;
  Complex coefficient;
  int embed_position = 0;
};

// N equiprobable states psi_j = sum_k c_k exp(2*pi*i*j*m_k/N) |k>, with D
// modes (1 <= D <= N), pairwise-distinct exponents, and every |c_k| above the
// grouping tolerance. Failure descendants keep the exponents and embed
// positions of their parent, so a descendant's exponents need not be 0..D-1.
class SymmetricSet {
 public:
  /// Root set: exponents and embed positions 0..D-1.
  static SymmetricSet make_root_set(int n, std::span<const Complex> coefficients,
                                    const ToleranceConfig& tol = {});

  /// Arbitrary distinct exponents in 0..N-1; validates like make_root_set.
  static SymmetricSet from_modes(int n, std::vector<Mode> modes, const ToleranceConfig& tol = {});

  int order() const { return order_; }
  int dim() const { return static_cast<int>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }

  std::vector<Complex> coefficients() const;
  std::vector<double> magnitudes() const;
  std::vector<int> exponents() const;
  std::vector<int> embed_positions() const;

 private:
  SymmetricSet(int n, std::vector<Mode> modes) : order_(n), modes_(std::move(modes)) {}

  int order_;
  std::vector<Mode> modes_;
};

struct MagnitudeGroup {
  double magnitude;  // smallest magnitude in the group
  int count;
};

struct CoefficientProfile {
  double c_min = 0.0;
  int multiplicity = 0;                 // d: modes within eps_group of c_min
  std::vector<MagnitudeGroup> groups;   // descending by magnitude
  double largest_merged_spread = 0.0;   // widest nonzero spread folded into one group

  bool uniform() const { return groups.size() == 1; }
};

/// Amplitudes of psi_j in mode order.
ComplexVector state(const SymmetricSet& set, int j);

/// All N states, index j in 0..N-1.
std::vector<ComplexVector> states(const SymmetricSet& set);

/// diag(exp(2*pi*i*m_k/N)); maps state(j) to state(j+1 mod N).
OperatorMatrix generator_unitary(const SymmetricSet& set);

/// Prior density (1/N) sum_j |psi_j><psi_j| = diag(|c_k|^2). The cross terms
/// vanish because the exponents are distinct mod N.
OperatorMatrix prior_density(const SymmetricSet& set);

// Magnitudes are grouped by absolute distance to the smallest member of each
// group, scanning upward from c_min.
CoefficientProfile coefficient_profile(const SymmetricSet& set, const ToleranceConfig& tol = {});

}  // namespace qsmc
