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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qsmc/errors.hpp"

namespace qsmc {

using Complex = std::complex<double>;

// Probability amplitudes in a fixed basis. Dense storage throughout: every
// space handled here has dimension at most 2N.
using ComplexVector = Eigen::VectorXcd;
using OperatorMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

struct ToleranceConfig {
  double eps_norm = 1e-10;
  double eps_herm = 1e-10;
  double eps_psd = 1e-10;
  double eps_unitary = 1e-10;
  double eps_prob = 1e-10;
  // Absolute tolerance used when grouping coefficient magnitudes.
  double eps_group = 1e-9;

  // Throws Errc::invalid_tolerance if any field is negative or not finite.
  void validate() const;
};

/// Unitary DFT on n modes, entry (k,l) = exp(2*pi*i*k*l/n)/sqrt(n).
OperatorMatrix dft_matrix(int n);

OperatorMatrix identity(int n);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

bool is_hermitian(const OperatorMatrix& m, double eps);
bool is_unitary(const OperatorMatrix& m, double eps);

/// Smallest eigenvalue of a Hermitian matrix (the Hermitian part is used).
double min_eigenvalue(const OperatorMatrix& m);

/// True iff every eigenvalue is >= -eps_psd. A non-square or non-Hermitian
/// input is a structural error (Errc::not_hermitian), not a "false".
bool check_positive(const OperatorMatrix& m, const ToleranceConfig& tol);

ComplexVector apply(const OperatorMatrix& m, const ComplexVector& v);

/// Kronecker product with the first factor's index major:
/// (a (x) b)(i*nb + k, j*nb + l) = a(i,j) * b(k,l).
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

/// Projector |v><v| (v is not normalized first).
OperatorMatrix outer(const ComplexVector& v);

/// Maps x into [0,1] if it lies within eps of the interval; throws
/// Errc::contract_violation otherwise.
double clamp_probability(double x, double eps);

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace qsmc
