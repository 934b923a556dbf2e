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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tnsprep/lattice.hpp"
#include "tnsprep/operators.hpp"

namespace tnsprep {

using QubitState = std::array<cplx, 2>;

/// Full problem instance: Psi(beta, t) = exp(beta K1) exp(i t K2) (x)_j |phi_j> / Z.
struct ModelSpec {
  explicit ModelSpec(Graph g) : graph(std::move(g)) {}

  Graph graph;
  CommutingFamily k1;
  CommutingFamily k2;
  double beta = 0.0;
  double t = 0.0;
  std::vector<QubitState> product_state;
  std::string name;

  int n() const { return graph.vertex_count(); }
  ModelSpec with_beta(double b) const;
  /// True when every site is prepared in |0>.
  bool all_zero_product() const;
};

struct ModelReport {
  FamilyReport k1;
  FamilyReport k2;
  std::vector<std::string> errors;

  bool accepted() const { return k1.accepted() && k2.accepted() && errors.empty(); }
  std::string describe() const;
};

ModelReport validate_model(const ModelSpec& model);
/// Throws DomainError listing every violation.
void require_valid(const ModelSpec& model);

QubitState ket0();
QubitState ket_plus();

/// Graph state generator: |+> sites, |11><11| per edge at t = pi, no K1.
ModelSpec build_cluster_model(const Graph& g);

/// kappa_{1,e} = (1 - sign Z Z) / 2 per edge on |+> sites, so amplitudes are
/// proportional to exp(-beta H_cl / 2) with H_cl = sign * sum_e Z Z.
ModelSpec build_gibbs_ising_model(const Graph& g, int coupling_sign, double beta = 0.0);

/// Smallest beta for which log(Q / q_min)/beta has norm <= 1 over the list,
/// q_min the smallest eigenvalue of Q.
double injective_mps_min_beta(const std::vector<CMatrix>& q_list);

/// Open chain of `sites` physical sites, each realized as qubits
/// (L_n, R_n) = (2n, 2n+1). K2 prepares a maximally entangled pair on every
/// (R_n, L_{n+1}) at t = pi/2; K1 applies Q_n on (L_n, R_n) through
/// kappa = log(Q_n / q_min)/beta, so exp(beta kappa) is Q_n up to a scalar
/// and kappa stays PSD. -log(Q_n)/beta would apply Q_n^-1. Without an
/// explicit beta the minimal admissible one is used.
ModelSpec build_injective_mps_model(int sites, const std::vector<CMatrix>& q_list,
                                    std::optional<double> beta = std::nullopt);

struct BondBound {
  double neighbor_count;
  /// d^(z^(2 (r1 + r2))), +inf on overflow; see log10_bond_bound.
  double bond_bound;
  double log10_bond_bound;
};

BondBound bond_dimension_bound(int z, int r1, int r2, int d);

namespace fixtures {
/// Path of 4; |11><11| per edge at t = pi; (1 - ZZ)/2 per edge; |+> sites.
ModelSpec chain4(double beta = 0.0);
/// Same families on |0> sites.
ModelSpec chain4_zero(double beta = 0.0);
/// 2x2 open grid, ferromagnetic Gibbs-Ising on |+> sites.
ModelSpec gibbs4(double beta = 0.0);
ModelSpec gibbs4_zero(double beta = 0.0);
/// Ferromagnetic Gibbs-Ising path of n on |0> sites.
ModelSpec gibbs_path_zero(int n, double beta = 0.0);
/// Trivial product state |0...0>.
ModelSpec product(int n);
/// Path of n; |++><++| per edge at t = pi; (1 - ZZ)/2 per edge; |0> sites.
ModelSpec xchain(int n, double beta = 0.0);

/// Named lookup: FX-CHAIN4, FX-CHAIN4-Z, FX-GIBBS4, FX-GIBBS4-Z,
/// FX-GIBBS-PATH-Z(n), FX-PROD(n), FX-XCHAIN(n). "(n)" may also be written ":n".
ModelSpec by_name(const std::string& name, double beta = 0.0);
std::vector<std::string> names();
}  // namespace fixtures

}  // namespace tnsprep
