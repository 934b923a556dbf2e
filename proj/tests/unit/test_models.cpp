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

#include <gtest/gtest.h>

#include <cmath>

#include "tnsprep/exact_oracle.hpp"
#include "tnsprep/models.hpp"
#include "tnsprep/state_engine.hpp"

namespace tnsprep {
namespace {

TEST(Fixtures, AllValidate) {
  for (const std::string name : {"FX-CHAIN4", "FX-CHAIN4-Z", "FX-GIBBS4", "FX-GIBBS4-Z",
                                 "FX-XCHAIN(5)", "FX-GIBBS-PATH-Z(3)", "FX-PROD(2)"})
    for (double beta : {0.0, 0.35}) {
      if (name == "FX-PROD(2)" && beta > 0) continue;
      ModelSpec m = fixtures::by_name(name, beta);
      EXPECT_TRUE(validate_model(m).accepted()) << name << "\n" << validate_model(m).describe();
      EXPECT_EQ(m.beta, beta);
    }
}

TEST(Fixtures, NameLookup) {
  EXPECT_EQ(fixtures::by_name("FX-XCHAIN:3").n(), 3);
  EXPECT_EQ(fixtures::by_name("FX-GIBBS-PATH-Z(5)").n(), 5);
  EXPECT_THROW(fixtures::by_name("FX-NOPE"), std::invalid_argument);
  EXPECT_THROW(fixtures::by_name("FX-PROD(3)", 0.1), std::invalid_argument);
  EXPECT_TRUE(fixtures::chain4_zero().all_zero_product());
  EXPECT_FALSE(fixtures::chain4().all_zero_product());
}

TEST(Validation, CatchesStateAndParameterErrors) {
  ModelSpec m = fixtures::chain4(0.1);
  m.beta = -1.0;
  m.product_state[2] = {cplx(1, 0), cplx(1, 0)};
  ModelReport r = validate_model(m);
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(r.errors.size(), 2u);
  EXPECT_THROW(require_valid(m), DomainError);
  m.product_state.pop_back();
  EXPECT_FALSE(validate_model(m).accepted());
}

// Amplitudes of the Gibbs fixture against direct enumeration of the
// classical Ising energy.
TEST(GibbsIsing, AmplitudesFollowClassicalWeights) {
  const double beta = 0.4;
  ModelSpec m = fixtures::gibbs4(beta);
  StateVector psi = build_state(m);
  const int n = 4;
  CVector want(1 << n);
  for (int s = 0; s < (1 << n); ++s) {
    double h_cl = 0.0;  // ferromagnetic: H = -sum z_a z_b
    for (auto [a, b] : m.graph.edges()) {
      int za = (s >> (n - 1 - a) & 1) ? -1 : 1;
      int zb = (s >> (n - 1 - b) & 1) ? -1 : 1;
      h_cl -= za * zb;
    }
    want(s) = std::exp(-beta * h_cl / 2.0);
  }
  want.normalize();
  EXPECT_LT((psi.amplitudes - want).norm(), 1e-12);
}

// X_j prod_{k ~ j} Z_k stabilizes the graph state.
TEST(Cluster, StabilizersHold) {
  for (const Graph& g : {lattices::cycle(5), lattices::grid(3, 2, false)}) {
    ModelSpec m = build_cluster_model(g);
    StateVector psi = build_state(m);
    for (Vertex j = 0; j < g.vertex_count(); ++j) {
      std::vector<Vertex> sup = {j};
      for (Vertex k : g.neighbors(j)) sup.push_back(k);
      Region r(sup);
      std::string letters;
      for (Vertex v : r) letters += v == j ? 'X' : 'Z';
      EXPECT_NEAR(exact_expectation(psi, pauli_operator(r, letters)), 1.0, 1e-10);
    }
  }
}

TEST(InjectiveMps, MinimalBetaNormalizesKappa) {
  CMatrix q = CMatrix::Zero(4, 4);
  q.diagonal() << 1.0, 0.5, 0.5, 0.25;
  std::vector<CMatrix> qs = {q, q, q};
  double b = injective_mps_min_beta(qs);
  EXPECT_NEAR(b, std::log(4.0), 1e-12);
  ModelSpec m = build_injective_mps_model(3, qs);
  EXPECT_NEAR(m.beta, b, 1e-12);
  EXPECT_TRUE(validate_model(m).accepted()) << validate_model(m).describe();
  double top = 0.0;
  for (const auto& k : m.k1.terms) top = std::max(top, linalg::hermitian_norm(k.matrix()));
  EXPECT_NEAR(top, 1.0, 1e-12);
  EXPECT_THROW(build_injective_mps_model(3, qs, 0.5), std::invalid_argument);
  // Only the eigenvalue spread matters; Q / 2 gives the same beta and state.
  CMatrix half = 0.5 * q;
  EXPECT_NEAR(injective_mps_min_beta({half, half, half}), b, 1e-12);
  ModelSpec mh = build_injective_mps_model(3, {half, half, half});
  EXPECT_NEAR(std::norm(build_state(mh).amplitudes.dot(build_state(m).amplitudes)), 1.0, 1e-12);
  for (const auto& k : mh.k1.terms)
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<CMatrix>(k.matrix()).eigenvalues().minCoeff(), -1e-12);
  CMatrix bad = q;
  bad(0, 0) = 0.0;
  EXPECT_THROW(injective_mps_min_beta({bad}), std::invalid_argument);
}

// For N = 1 site the state is (Q (x) 1-ish) applied to a Bell pair; with two
// sites the entangler links R_0 and L_1. Compare against a direct
// contraction: (Q (x) Q) on (L0 R0)(L1 R1) applied to |0> (x) Phi (x) |0>,
// Phi maximally entangled on (R0, L1).
TEST(InjectiveMps, TwoSitesMatchDirectContraction) {
  CMatrix q = CMatrix::Zero(4, 4);
  q.diagonal() << 1.0, 0.5, 0.5, 0.25;
  ModelSpec m = build_injective_mps_model(2, {q, q});
  StateVector psi = build_state(m);

  // Entangler exp(i pi/2 k2) on (1, 2), applied to |0000>, as a dense oracle.
  CMatrix k2 = CMatrix::Zero(4, 4);
  const cplx i(0, 1);
  k2(0, 0) = k2(3, 3) = 0.5;
  k2(3, 0) = -0.5 * i;
  k2(0, 3) = 0.5 * i;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k2);
  CMatrix u = es.eigenvectors() *
              (cplx(0, M_PI / 2) * es.eigenvalues().cast<cplx>()).array().exp().matrix().asDiagonal() *
              es.eigenvectors().adjoint();
  CVector zero = CVector::Zero(16);
  zero(0) = 1.0;
  CVector seeded = embed_matrix(Region{1, 2}, u, Region{0, 1, 2, 3}) * zero;
  CVector want = linalg::kron(q, q) * seeded;
  want.normalize();
  EXPECT_NEAR(std::norm(want.dot(psi.amplitudes)), 1.0, 1e-12);
}

TEST(BondBound, SeriesAndClosedForm) {
  EXPECT_EQ(bond_dimension_bound(3, 0, 0, 2).neighbor_count, 0.0);
  EXPECT_EQ(bond_dimension_bound(2, 0, 0, 2).neighbor_count, 0.0);
  EXPECT_NEAR(bond_dimension_bound(2, 1, 0, 2).neighbor_count, 2.0, 1e-12);
  // z = 3, r1 = 1: closed form 3 (1 - 2^2) / (2 - 3) = 9.
  EXPECT_NEAR(bond_dimension_bound(3, 1, 0, 2).neighbor_count, 9.0, 1e-12);
  BondBound b = bond_dimension_bound(4, 1, 0, 2);
  EXPECT_NEAR(b.bond_bound, 65536.0, 1e-6);
  EXPECT_NEAR(b.log10_bond_bound, 16 * std::log10(2.0), 1e-12);
  EXPECT_TRUE(std::isinf(bond_dimension_bound(4, 3, 3, 2).bond_bound));
  EXPECT_THROW(bond_dimension_bound(0, 1, 1, 2), std::invalid_argument);
}

}  // namespace
}  // namespace tnsprep
