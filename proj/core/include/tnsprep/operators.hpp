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

#include <map>
#include <string>
#include <vector>

#include "tnsprep/lattice.hpp"
#include "tnsprep/linalg.hpp"

namespace tnsprep {

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kSupportTol = 1e-10;
inline constexpr double kFamilyTol = 1e-10;

/// Dense matrix on a set of qubits, not necessarily Hermitian. Qubit k of
/// the support (k = 0 first) is bit (|support| - 1 - k) of the row index.
struct LocalMatrix {
  Region support;
  CMatrix matrix;

  LocalMatrix() : matrix(CMatrix::Identity(1, 1)) {}
  LocalMatrix(Region s, CMatrix m);

  static LocalMatrix identity(const Region& s);
  int qubits() const { return static_cast<int>(support.size()); }
  LocalMatrix adjoint() const { return {support, matrix.adjoint()}; }
  /// Product this * other on the union of the two supports.
  LocalMatrix operator*(const LocalMatrix& other) const;
  /// Matrix acting on `target` (a superset of the support).
  CMatrix on(const Region& target) const;
};

/// Hermitian operator with minimal support. Construction hermiticity-checks
/// at kHermiticityTol, then strips qubits on which the matrix acts as the
/// identity (partial-trace test at kSupportTol).
class LocalOperator {
 public:
  LocalOperator() : matrix_(CMatrix::Zero(1, 1)) {}
  LocalOperator(Region support, CMatrix matrix);

  const Region& support() const { return support_; }
  const CMatrix& matrix() const { return matrix_; }
  int qubits() const { return static_cast<int>(support_.size()); }
  CMatrix on(const Region& target) const;
  LocalMatrix as_matrix() const { return {support_, matrix_}; }

 private:
  Region support_;
  CMatrix matrix_;
};

/// Kronecker-with-identity placement of an arbitrary matrix on `from` into
/// `to`. Throws std::invalid_argument unless from is a subset of to.
CMatrix embed_matrix(const Region& from, const CMatrix& m, const Region& to);

LocalOperator embed(const LocalOperator& op, const Region& target);

/// Embeds into the full register 0..n-1.
CMatrix global_matrix(const LocalMatrix& m, int n);

/// In-place application of a local matrix to a 2^n statevector. Vertex v is
/// bit (n - 1 - v) of the amplitude index.
void apply_local(const LocalMatrix& m, CVector& state, int n);

/// Partial trace of a matrix on `support` over the qubits in `traced`.
CMatrix partial_trace(const Region& support, const CMatrix& m, const Region& traced);

/// Hermitian part with support re-minimized.
LocalOperator hermitize(const LocalMatrix& m, double tol = 1e-9);

/// V diag(exp(s e_k)) V^dagger from the eigendecomposition of op.
LocalMatrix herm_exp(const LocalOperator& op, cplx s);

/// Operator norm of [a, b] on the joint support.
double commutator_residual(const LocalMatrix& a, const LocalMatrix& b);

struct CommutingFamily {
  std::vector<LocalOperator> terms;
  int declared_radius = 0;

  std::size_t size() const { return terms.size(); }
};

struct FamilyViolation {
  enum class Kind { kNonCommuting, kNotPsd, kNormExceeded, kRadiusExceeded, kBadVertex };
  Kind kind;
  std::vector<int> terms;
  double residual;

  std::string describe() const;
};

struct FamilyReport {
  std::vector<FamilyViolation> violations;
  bool accepted() const { return violations.empty(); }
};

FamilyReport validate_family(const CommutingFamily& family, const Graph& graph);

/// Pauli letters I=0, X=1, Y=2, Z=3.
CMatrix pauli(char letter);
/// Tensor product of letters over the region, in support order.
CMatrix pauli_string_matrix(const std::string& letters);
LocalOperator pauli_operator(const Region& support, const std::string& letters);

struct PauliExpansion {
  Region support;
  /// Letter strings over support order mapped to o(gamma). Coefficients
  /// with magnitude below 1e-14 are dropped.
  std::map<std::string, double> terms;

  CMatrix reconstruct() const;
};

PauliExpansion pauli_decompose(const LocalOperator& op);

/// kappa_n = (prod of unitaries whose support meets seed n) O_n (...)^dagger.
/// Unitaries must pairwise commute; seed supports must be disjoint.
CommutingFamily conjugated_family(const Graph& graph, const std::vector<LocalMatrix>& unitaries,
                                  const std::vector<LocalOperator>& seeds);

/// Unitaries exp(i h t) with h the tensor power of O_A (resp. O_B) over a
/// plaquette. Plaquette (x, y) has corner sites (x..x+1, y..y+1) and is of
/// type A when x + y is even. Times are consumed in row-major plaquette order.
std::vector<LocalMatrix> toric_type_unitaries(int lx, int ly, const CMatrix& o_a,
                                              const CMatrix& o_b,
                                              const std::vector<double>& times_a,
                                              const std::vector<double>& times_b);

namespace named {
/// (1 - Z_a Z_b) / 2.
LocalOperator ising_edge(Vertex a, Vertex b);
/// |11><11| on (a, b).
LocalOperator projector11(Vertex a, Vertex b);
/// |+><+| on a single site.
LocalOperator plus_projector(Vertex a);
/// |++><++| on (a, b).
LocalOperator plus_projector2(Vertex a, Vertex b);
}  // namespace named

}  // namespace tnsprep
