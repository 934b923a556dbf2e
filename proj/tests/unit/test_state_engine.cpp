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

#include "tnsprep/exact_oracle.hpp"
#include "tnsprep/state_engine.hpp"

namespace tnsprep {
namespace {

Region all_sites(int n) {
  std::vector<Vertex> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return Region(v);
}

CMatrix dense_exp(const CMatrix& h, cplx s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector d = (s * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(beta K1) exp(i t K2) on the product state from the summed generators.
CVector dense_state(const ModelSpec& m) {
  const Region all = all_sites(m.n());
  const int dim = 1 << m.n();
  CMatrix k1 = CMatrix::Zero(dim, dim), k2 = CMatrix::Zero(dim, dim);
  for (const auto& k : m.k1.terms) k1 += k.on(all);
  for (const auto& k : m.k2.terms) k2 += k.on(all);
  CVector v = dense_exp(k1, m.beta) * dense_exp(k2, cplx(0, m.t)) * product_vector(m);
  return v.normalized();
}

TEST(BuildState, MatchesDenseExponentials) {
  for (const std::string name : {"FX-CHAIN4", "FX-GIBBS4", "FX-XCHAIN(5)"})
    for (double beta : {0.0, 0.25, 0.6}) {
      ModelSpec m = fixtures::by_name(name, beta);
      StateVector psi = build_state(m);
      EXPECT_NEAR(psi.amplitudes.norm(), 1.0, 1e-12);
      EXPECT_NEAR(std::norm(psi.amplitudes.dot(dense_state(m))), 1.0, 1e-12) << name << " " << beta;
      if (beta == 0.0) EXPECT_NEAR(psi.norm_constant, 1.0, 1e-12);
    }
}

TEST(BuildState, RespectsBudget) {
  EngineLimits tight;
  tight.max_state_qubits = 3;
  EXPECT_THROW(build_state(fixtures::chain4(), tight), BudgetExceeded);
  EXPECT_THROW(dense_hamiltonian(build_parent_hamiltonian(fixtures::chain4()), {14, 3}),
               BudgetExceeded);
}

TEST(MuNu, ChainSets) {
  ModelSpec m = fixtures::chain4(0.2);
  MuNu s0 = mu_nu_sets(m, 0);
  EXPECT_EQ(s0.mu, (std::vector<int>{0}));
  EXPECT_EQ(s0.nu, (std::vector<int>{0, 1}));
  MuNu s1 = mu_nu_sets(m, 1);
  EXPECT_EQ(s1.mu, (std::vector<int>{0, 1}));
  EXPECT_EQ(s1.nu, (std::vector<int>{0, 1, 2}));
  // Without K2 only the K1 terms containing j remain.
  MuNu g = mu_nu_sets(fixtures::gibbs4(0.2), 0);
  EXPECT_TRUE(g.mu.empty());
  EXPECT_EQ(g.nu.size(), 2u);
}

TEST(ParentHamiltonian, TermsArePositiveContractionsThatAnnihilate) {
  for (const std::string name : {"FX-CHAIN4", "FX-GIBBS4", "FX-XCHAIN(4)", "FX-GIBBS-PATH-Z(4)"}) {
    ModelSpec m = fixtures::by_name(name, 0.3);
    ParentHamiltonian ph = build_parent_hamiltonian(m);
    StateVector psi = build_state(m);
    ASSERT_EQ(static_cast<int>(ph.terms.size()), m.n());
    auto fps = ph.footprints();
    for (std::size_t j = 0; j < ph.terms.size(); ++j) {
      const auto& h = ph.terms[j].h;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
      EXPECT_LE(es.eigenvalues().maxCoeff(), 1.0 + 1e-12);
      EXPECT_LT(std::abs(exact_expectation(psi, h)), 1e-12);
      EXPECT_TRUE(h.support().is_subset_of(fps[j]));
      EXPECT_TRUE(fps[j].contains(static_cast<Vertex>(j)));
    }
  }
}

TEST(ParentHamiltonian, FootprintsDoNotDependOnBeta) {
  ParentHamiltonian a = build_parent_hamiltonian(fixtures::gibbs4(0.0));
  ParentHamiltonian b = build_parent_hamiltonian(fixtures::gibbs4(0.3));
  EXPECT_EQ(a.footprints(), b.footprints());
  // At beta = 0 the numeric supports collapse to single sites.
  EXPECT_EQ(a.terms[0].h.support(), Region{0});
  EXPECT_EQ(b.terms[0].h.support(), a.footprints()[0]);
}

TEST(Entangler, EqualsStateAtZeroBeta) {
  ModelSpec m = fixtures::chain4(0.0);
  StateVector seed;
  seed.amplitudes = product_vector(m);
  StateVector e = apply_entangler(m, seed);
  EXPECT_NEAR(std::norm(e.amplitudes.dot(build_state(m).amplitudes)), 1.0, 1e-12);
}

TEST(Adiabatic, ConvergesAndIsDeterministic) {
  ModelSpec m = fixtures::chain4(0.2);
  AdiabaticSchedule s;
  s.total_time = 40.0;
  s.target_beta = 0.2;
  AdiabaticResult a = adiabatic_evolve(m, s);
  AdiabaticResult b = adiabatic_evolve(m, s);
  EXPECT_EQ(a.final_state.amplitudes, b.final_state.amplitudes);
  EXPECT_GT(a.fidelity, 0.95);
  EXPECT_LT(a.norm_drift, 1e-8);
  EXPECT_LE(a.richardson_difference, s.richardson_tol);
  // Longer is better here.
  s.total_time = 160.0;
  EXPECT_GT(adiabatic_evolve(m, s).fidelity, a.fidelity - 1e-3);
}

TEST(Adiabatic, ZeroPathKeepsTheSeed) {
  ModelSpec m = fixtures::chain4(0.0);
  AdiabaticSchedule s;
  s.total_time = 5.0;
  s.target_beta = 0.0;
  EXPECT_NEAR(adiabatic_evolve(m, s).fidelity, 1.0, 1e-10);
}

TEST(RuntimeEstimate, Formula) {
  EXPECT_NEAR(runtime_estimate(4, 0.5, 0.1), 16.0 / (0.125 * 0.1), 1e-9);
  EXPECT_NEAR(runtime_estimate(4, 0.5, 0.1, 2.0), 2.0 * 16.0 / (0.125 * 0.1), 1e-9);
  EXPECT_THROW(runtime_estimate(4, 0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(runtime_estimate(4, 0.5, 1.5), std::invalid_argument);
}

}  // namespace
}  // namespace tnsprep
