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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnsprep/state_engine.hpp"

namespace tnsprep {

enum class ObservableKind { kIdentity, kZplus, kZminus, kQlambda, kQj1, kQj2, kQj3 };
std::string to_string(ObservableKind k);

/// An observable with a known ground-state expectation value.
struct ObservableSpec {
  ObservableKind kind = ObservableKind::kIdentity;
  Region lambda;
  std::optional<LocalOperator> p;
  LocalOperator op;
  double expected = 0.0;
  PauliExpansion expansion;
};

/// O_lambda = prod_{mu(lambda)} exp(-i kappa_2 t) prod_{nu(lambda)} exp(-beta kappa_1).
/// Throws DomainError unless every site of lambda is prepared in |0>.
LocalMatrix build_O_lambda(const ModelSpec& model, const Region& lambda);
/// prod exp(+beta kappa_1) prod exp(+i kappa_2 t), factor by factor.
LocalMatrix build_O_lambda_inverse(const ModelSpec& model, const Region& lambda);

/// || O|Psi> - (|0><0| on lambda) O|Psi> ||.
double projection_residual(const ModelSpec& model, const Region& lambda, const StateVector& psi);

/// (Z_lambda + Z_lambda^dag)/2 and (Z_lambda - Z_lambda^dag)/2i with
/// Z_lambda = O^-1 (x) sigma_z O. Expectations 1 and 0.
std::pair<ObservableSpec, ObservableSpec> build_Z_pm(const ModelSpec& model,
                                                     const Region& lambda);

/// Smallest over j in lambda of max |<0|P|0>_j| (the partial matrix element
/// is an operator on the remaining qubits).
double vanishing_element(const LocalOperator& p, const Region& lambda);

/// O^dag P O. P must live inside lambda with a vanishing element at some j.
ObservableSpec build_Q_lambda(const ModelSpec& model, const Region& lambda,
                              const LocalOperator& p);

/// O_j^dag A_j P' O_j with A_j = sigma_x, sigma_y or (1 - sigma_z) for
/// variant 1, 2, 3. P' must avoid j.
ObservableSpec build_Q_j(const ModelSpec& model, Vertex j, const LocalOperator& p_prime,
                         int variant);

/// Letters over the whole register (one per site, 'I','X','Y','Z').
/// Identity maps to 1, all-Z on its support to Z+, anything else to Q.
ObservableSpec complete_map(const ModelSpec& model, const std::string& letters);

struct GramReport {
  int dimension = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double condition = 0.0;
  bool nonsingular = false;
  /// Letters in enumeration order (lexicographic in I < X < Y < Z).
  std::vector<std::string> order;
  CMatrix b;
};

/// B_nm = tr(Q_n^dag Q_m) / 2^N over all 4^N mapped operators. N <= max_qubits.
GramReport completeness_gram(const ModelSpec& model, int max_qubits = 4, int workers = 1);

/// Equivalent all-|0> model: with W_v |0> = |phi_v>, the original state is
/// (x)_v W_v applied to the rotated model's state. Only a bookkeeping aid;
/// the builders above still reject non-|0> sites.
struct ZeroFrame {
  explicit ZeroFrame(ModelSpec m) : rotated(std::move(m)) {}

  ModelSpec rotated;
  std::vector<CMatrix> w;
};

ZeroFrame zero_frame(const ModelSpec& model);

/// Maps an observable of the rotated model back to the original one
/// (O -> W O W^dag). Expectation values carry over unchanged.
ObservableSpec to_model_frame(const ObservableSpec& spec, const ZeroFrame& frame);

/// Every string of length n over I, X, Y, Z in lexicographic order.
std::vector<std::string> pauli_strings(int n);

}  // namespace tnsprep
