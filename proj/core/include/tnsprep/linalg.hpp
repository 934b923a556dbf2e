// Copyright 2026 The tnsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tnsprep {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Domain failure: a well-formed request whose answer is "no" (validation
/// failure, no certificate, budget exceeded). Usage errors are reported as
/// std::invalid_argument instead.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace linalg {

double max_abs(const CMatrix& m);
double hermiticity_residual(const CMatrix& m);
CMatrix hermitian_part(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
/// Every eigenvalue of `h` appears twice in the embedding.
RMatrix realify(const CMatrix& h);

/// True if every entry has |imag| <= tol.
bool is_real(const CMatrix& m, double tol = 1e-14);

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending. Deliberately shares no code with Eigen's tridiagonal QR path
/// so that feasibility audits are not self-referential.
RVector jacobi_eigenvalues(RMatrix a, double tol = 1e-15, int max_sweeps = 200);

/// Minimum eigenvalue of a Hermitian matrix through the Jacobi route.
double jacobi_min_eigenvalue(const CMatrix& h);

/// Minimum eigenvalue through Eigen's self-adjoint solver.
double min_eigenvalue(const CMatrix& h);
double min_eigenvalue(const RMatrix& s);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_norm(const CMatrix& h);

}  // namespace linalg
}  // namespace tnsprep
