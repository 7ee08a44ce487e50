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

#include "qsmc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsmc {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_dimension: return "invalid dimension";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::not_hermitian: return "not Hermitian";
    case Errc::not_unitary: return "not unitary";
    case Errc::invalid_tolerance: return "invalid tolerance";
    case Errc::invalid_set: return "invalid symmetric set";
    case Errc::out_of_range: return "index out of range";
    case Errc::support_violation: return "support violation";
    case Errc::contract_violation: return "contract violation";
    case Errc::degenerate_stage: return "degenerate stage";
    case Errc::unsupported_instance: return "unsupported instance";
    case Errc::parse_error: return "parse error";
  }
  return "unknown error";
}

void ToleranceConfig::validate() const {
  const double fields[] = {eps_norm, eps_herm, eps_psd, eps_unitary, eps_prob, eps_group};
  for (double f : fields) {
    if (!std::isfinite(f) || f < 0.0) {
      throw Error(Errc::invalid_tolerance, "tolerances must be finite and nonnegative");
    }
  }
}

OperatorMatrix dft_matrix(int n) {
  if (n < 1) {
    throw Error(Errc::invalid_dimension, "DFT order must be positive, got " + std::to_string(n));
  }
  OperatorMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      // Reduce k*l mod n first so the phase argument stays small.
      const int e = (k * l) % n;
      f(k, l) = std::polar(scale, 2.0 * kPi * e / n);
    }
  }
  return f;
}

OperatorMatrix identity(int n) {
  if (n < 0) throw Error(Errc::invalid_dimension, "negative dimension");
  return OperatorMatrix::Identity(n, n);
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, "max_abs_diff on differently shaped matrices");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const OperatorMatrix& m, double eps) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= eps;
}

bool is_unitary(const OperatorMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.adjoint() * m, identity(static_cast<int>(m.rows()))) <= eps;
}

double min_eigenvalue(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "eigenvalues of a non-square matrix");
  if (m.rows() == 0) return 0.0;
  const OperatorMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool check_positive(const OperatorMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) throw Error(Errc::not_hermitian, "PSD check on a non-square matrix");
  if (!is_hermitian(m, tol.eps_herm)) {
    throw Error(Errc::not_hermitian, "PSD check on a non-Hermitian matrix");
  }
  return min_eigenvalue(m) >= -tol.eps_psd;
}

ComplexVector apply(const OperatorMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.size()) {
    throw Error(Errc::dimension_mismatch, "matrix has " + std::to_string(m.cols()) +
                                              " columns, vector has " + std::to_string(v.size()) +
                                              " entries");
  }
  return m * v;
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Eigen::Index br = b.rows(), bc = b.cols();
  OperatorMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

OperatorMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

double clamp_probability(double x, double eps) {
  if (x < -eps || x > 1.0 + eps || std::isnan(x)) {
    throw Error(Errc::contract_violation, "probability " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace qsmc
