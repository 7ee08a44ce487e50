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

#include <vector>

#include "qsmc/core.hpp"

namespace qsmc {

// Mach-Zehnder cell on adjacent modes (a, a+1):
//   T(theta, phi) = B * P(2 theta) * B * P(phi)
//               = i e^{i theta} [[e^{i phi} sin(theta),  cos(theta)],
//                                [e^{i phi} cos(theta), -sin(theta)]]
// with B = (1/sqrt 2)[[1, i], [i, 1]] a 50:50 beam splitter and
// P(x) = diag(e^{i x}, 1) a phase shifter on the upper mode.
struct MeshLayer {
  int mode = 0;  // upper mode; the cell acts on (mode, mode + 1)
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Matrix2cd block() const;
};

// target = diag(exp(i * output_phases)) * T_L * ... * T_1; layers are stored
// in the order light meets them.
struct ReckMesh {
  OperatorMatrix target;
  std::vector<MeshLayer> layers;
  std::vector<double> output_phases;

  OperatorMatrix reconstruct() const;
  double reconstruction_error() const;
};

/// Triangular nulling of a unitary into adjacent-mode cells plus output
/// phases. Entries already zero are skipped, so identity(n) yields no layers.
ReckMesh reck_decompose(const OperatorMatrix& u, double eps_unitary = 1e-10);

/// Embeds a 2x2 block on modes (a, a+1) of an n-mode identity.
OperatorMatrix embed_two_mode(const Eigen::Matrix2cd& block, int a, int n);

}  // namespace qsmc
