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

#include <functional>
#include <vector>

#include "tnsprep/models.hpp"

namespace tnsprep {

struct EngineLimits {
  int max_state_qubits = 14;
  int max_dense_qubits = 10;
};

struct StateVector {
  CVector amplitudes;
  /// Pre-normalization 2-norm Z.
  double norm_constant = 1.0;

  int qubits() const;
};

/// mu: indices into K2 of terms containing j. nu: indices into K1 of terms
/// overlapping any mu term, plus every K1 term containing j.
struct MuNu {
  std::vector<int> mu;
  std::vector<int> nu;
};

MuNu mu_nu_sets(const ModelSpec& model, Vertex j);
/// Unions over the sites of the region.
MuNu mu_nu_sets(const ModelSpec& model, const Region& lambda);

/// Product state (x)_j |phi_j> as a 2^N vector.
CVector product_vector(const ModelSpec& model);

StateVector build_state(const ModelSpec& model, const EngineLimits& limits = {});

/// prod_{n in mu} exp(-i kappa_{2,n} t) prod_{m in nu} exp(-beta kappa_{1,m}),
/// on the union of the factor supports and `extra`.
LocalMatrix build_O(const ModelSpec& model, const MuNu& sets, const Region& extra);
LocalMatrix build_O_j(const ModelSpec& model, Vertex j);

struct ParentTerm {
  Vertex site;
  LocalOperator h;
  std::vector<int> mu;
  std::vector<int> nu;
};

struct ParentHamiltonian {
  explicit ParentHamiltonian(ModelSpec m) : model(std::move(m)) {}

  ModelSpec model;
  std::vector<ParentTerm> terms;

  int n() const { return model.n(); }
  std::vector<LocalOperator> operators() const;
  /// {j} united with the supports of mu_j and nu_j: the support of h_j at
  /// generic beta and t.
  std::vector<Region> footprints() const;
};

/// h_j = O_j^dagger (1 - |phi_j><phi_j|) O_j for every site j.
ParentHamiltonian build_parent_hamiltonian(const ModelSpec& model);

/// Sum of embedded terms as a dense 2^N matrix. Throws BudgetExceeded above
/// limits.max_dense_qubits.
CMatrix dense_hamiltonian(const std::vector<LocalOperator>& terms, int n,
                          const EngineLimits& limits = {});
CMatrix dense_hamiltonian(const ParentHamiltonian& ph, const EngineLimits& limits = {});

/// exp(i t K2) applied factor by factor.
StateVector apply_entangler(const ModelSpec& model, const StateVector& state);

struct AdiabaticSchedule {
  double total_time = 1.0;
  double target_beta = 0.0;
  /// beta(s) on [0, 1]; defaults to s * target_beta when empty.
  std::function<double(double)> beta_path;
  /// Initial step count; 0 picks one from T and the spectral norm.
  int initial_steps = 0;
  /// Richardson acceptance between n and 2n step runs.
  double richardson_tol = 1e-6;
  double drift_tol = 1e-8;
  int max_steps = 1 << 22;
};

struct AdiabaticResult {
  StateVector final_state;
  double fidelity = 0.0;
  int steps = 0;
  double norm_drift = 0.0;
  double richardson_difference = 0.0;
};

/// Integrates i d psi/ds = T H(beta(s), t) psi from the seed (default
/// exp(i t K2) applied to the product state) with a fourth-order Magnus
/// exponential integrator, halving the step until two successive runs agree.
AdiabaticResult adiabatic_evolve(const ModelSpec& model, const AdiabaticSchedule& schedule,
                                 const StateVector* seed = nullptr,
                                 const EngineLimits& limits = {});

/// C N^2 / (delta^3 epsilon).
double runtime_estimate(int n, double delta, double epsilon, double c = 1.0);

}  // namespace tnsprep
