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

#include "qsmc/reck.hpp"

#include <cmath>

namespace qsmc {

namespace {
constexpr double kNullThreshold = 1e-14;
}

Eigen::Matrix2cd MeshLayer::block() const {
  const Complex pre = Complex(0.0, 1.0) * std::polar(1.0, theta);
  const Complex ephi = std::polar(1.0, phi);
  const double s = std::sin(theta), c = std::cos(theta);
  Eigen::Matrix2cd t;
  t << pre * ephi * s, pre * c, pre * ephi * c, -pre * s;
  return t;
}

OperatorMatrix embed_two_mode(const Eigen::Matrix2cd& block, int a, int n) {
  if (a < 0 || a + 1 >= n) throw Error(Errc::out_of_range, "mesh cell outside the mode range");
  OperatorMatrix m = identity(n);
  m.block(a, a, 2, 2) = block;
  return m;
}

OperatorMatrix ReckMesh::reconstruct() const {
  const int n = static_cast<int>(target.rows());
  OperatorMatrix u = identity(n);
  for (const MeshLayer& layer : layers) {
    u = embed_two_mode(layer.block(), layer.mode, n) * u;
  }
  for (int k = 0; k < n; ++k) u.row(k) *= std::polar(1.0, output_phases[k]);
  return u;
}

double ReckMesh::reconstruction_error() const { return max_abs_diff(reconstruct(), target); }

ReckMesh reck_decompose(const OperatorMatrix& u, double eps_unitary) {
  if (!is_unitary(u, eps_unitary)) throw Error(Errc::not_unitary, "Reck decomposition input");
  const int n = static_cast<int>(u.rows());

  ReckMesh mesh;
  mesh.target = u;
  OperatorMatrix work = u;
  // Right-multiplying by T^dagger on columns (c, c+1) zeroes work(r, c).
  for (int r = n - 1; r >= 1; --r) {
    for (int c = 0; c < r; ++c) {
      const Complex x = work(r, c);
      const Complex y = work(r, c + 1);
      if (std::abs(x) <= kNullThreshold) continue;
      MeshLayer layer;
      layer.mode = c;
      layer.theta = std::atan2(std::abs(y), std::abs(x));
      layer.phi = std::abs(y) > 0.0 ? std::arg(x) - std::arg(-y) : 0.0;
      const Eigen::Matrix2cd t_dag = layer.block().adjoint();
      const OperatorMatrix cols = work.middleCols(c, 2) * t_dag;
      work.middleCols(c, 2) = cols;
      work(r, c) = 0.0;
      mesh.layers.push_back(layer);
    }
  }
  mesh.output_phases.resize(n);
  for (int k = 0; k < n; ++k) mesh.output_phases[k] = std::arg(work(k, k));
  return mesh;
}

}  // namespace qsmc
