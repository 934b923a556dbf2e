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

#include <vector>

#include "tnsprep/state_engine.hpp"

namespace tnsprep {

struct SpectrumReport {
  /// Lowest k eigenvalues, ascending.
  std::vector<double> eigenvalues;
  /// Count of eigenvalues within 1e-8 * max(1, ||H||) of the minimum.
  int ground_degeneracy = 0;
  /// E_1 - E_0.
  double gap = 0.0;
  StateVector ground;
  double max_residual = 0.0;
};

SpectrumReport spectrum(const CMatrix& h, int k = 4);
SpectrumReport spectrum(const ParentHamiltonian& ph, int k = 4, const EngineLimits& limits = {});

/// <psi| embed(op) |psi>, real part; throws std::invalid_argument on
/// dimension mismatch or support outside the register.
double exact_expectation(const StateVector& state, const LocalOperator& op);
/// Complex expectation for a general local matrix.
cplx exact_expectation(const StateVector& state, const LocalMatrix& op);

/// rho -> (1 - p) rho + p tr_q(rho) (x) 1/2 applied to every qubit.
CMatrix depolarized_density(const StateVector& state, double p, int max_qubits = 8);

/// tr(H rho) for the depolarized ground state. N <= 8.
double noisy_energy(const ParentHamiltonian& ph, double p);

}  // namespace tnsprep
