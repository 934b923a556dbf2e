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

#include "tnsprep/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tnsprep {

SpectrumReport spectrum(const CMatrix& h, int k) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("spectrum: matrix must be square and non-empty");
  if (k < 1) throw std::invalid_argument("spectrum: k must be positive");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(h));
  if (es.info() != Eigen::Success) throw DomainError("spectrum: eigensolver failed");
  const RVector& ev = es.eigenvalues();
  const Eigen::Index dim = ev.size();
  SpectrumReport r;
  const Eigen::Index kk = std::min<Eigen::Index>(k, dim);
  for (Eigen::Index i = 0; i < kk; ++i) {
    r.eigenvalues.push_back(ev(i));
    double res = (h * es.eigenvectors().col(i) - ev(i) * es.eigenvectors().col(i)).norm();
    r.max_residual = std::max(r.max_residual, res);
  }
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < dim; ++i)
    if (ev(i) - ev(0) <= 1e-8 * scale) ++r.ground_degeneracy;
  r.gap = dim > 1 ? ev(1) - ev(0) : 0.0;
  r.ground.amplitudes = es.eigenvectors().col(0);
  r.ground.norm_constant = 1.0;
  if (r.max_residual > 1e-8)
    throw DomainError("spectrum: eigenpair residual " + std::to_string(r.max_residual));
  return r;
}

SpectrumReport spectrum(const ParentHamiltonian& ph, int k, const EngineLimits& limits) {
  return spectrum(dense_hamiltonian(ph, limits), k);
}

cplx exact_expectation(const StateVector& state, const LocalMatrix& op) {
  const int n = state.qubits();
  if (state.amplitudes.size() != (Eigen::Index{1} << n))
    throw std::invalid_argument("exact_expectation: state length is not a power of two");
  CVector phi = state.amplitudes;
  apply_local(op, phi, n);
  return state.amplitudes.dot(phi);
}

double exact_expectation(const StateVector& state, const LocalOperator& op) {
  return exact_expectation(state, op.as_matrix()).real();
}

CMatrix depolarized_density(const StateVector& state, double p, int max_qubits) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing p must lie in [0, 1]");
  const int n = state.qubits();
  if (n > max_qubits)
    throw BudgetExceeded("density-matrix budget exceeded: N=" + std::to_string(n) + " > " +
                         std::to_string(max_qubits));
  CMatrix rho = state.amplitudes * state.amplitudes.adjoint();
  const Eigen::Index dim = rho.rows();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    CMatrix next = (1.0 - p) * rho;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        if (((r & bit) != 0) != ((c & bit) != 0)) continue;
        cplx traced = rho(r & ~bit, c & ~bit) + rho(r | bit, c | bit);
        next(r, c) += 0.5 * p * traced;
      }
    }
    rho = std::move(next);
  }
  return rho;
}

double noisy_energy(const ParentHamiltonian& ph, double p) {
  if (ph.n() > 8) throw BudgetExceeded("noisy_energy: density-matrix budget is N <= 8");
  StateVector psi = build_state(ph.model);
  CMatrix rho = depolarized_density(psi, p);
  CMatrix h = dense_hamiltonian(ph);
  return (h.cwiseProduct(rho.transpose())).sum().real();
}

}  // namespace tnsprep
