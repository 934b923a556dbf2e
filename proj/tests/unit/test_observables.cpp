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
#include "tnsprep/observables.hpp"

namespace tnsprep {
namespace {

TEST(OLambda, InverseAndProjection) {
  ModelSpec m = fixtures::chain4_zero().with_beta(0.3);
  StateVector psi = build_state(m);
  for (const Region& lam : {Region{1}, Region{0, 1}, Region{1, 2, 3}}) {
    LocalMatrix o = build_O_lambda(m, lam);
    LocalMatrix inv = build_O_lambda_inverse(m, lam);
    LocalMatrix prod = inv * o;
    EXPECT_LT(linalg::max_abs(prod.matrix - CMatrix::Identity(prod.matrix.rows(), prod.matrix.cols())),
              1e-10);
    // O_lambda Psi carries |0> on lambda.
    EXPECT_LT(projection_residual(m, lam, psi), 1e-10);
  }
  EXPECT_THROW(build_O_lambda(fixtures::chain4(0.3), Region{0}), DomainError);
  EXPECT_THROW(build_O_lambda(m, Region{}), std::invalid_argument);
}

TEST(Observables, ExpectationsOnTheTargetState) {
  for (const std::string name : {"FX-CHAIN4-Z", "FX-GIBBS4-Z", "FX-XCHAIN(4)"}) {
    ModelSpec m = fixtures::by_name(name, 0.25);
    StateVector psi = build_state(m);
    for (const Region& lam : {Region{0}, Region{1, 2}}) {
      auto [zp, zm] = build_Z_pm(m, lam);
      EXPECT_NEAR(exact_expectation(psi, zp.op), 1.0, 1e-10) << name;
      EXPECT_NEAR(exact_expectation(psi, zm.op), 0.0, 1e-10) << name;
      EXPECT_EQ(zp.expected, 1.0);
      EXPECT_LT(linalg::max_abs(zp.expansion.reconstruct() - zp.op.matrix()), 1e-12);
    }
    ObservableSpec q = build_Q_lambda(m, Region{1, 2}, pauli_operator(Region{1, 2}, "XZ"));
    EXPECT_NEAR(exact_expectation(psi, q.op), 0.0, 1e-10);
    for (int variant : {1, 2, 3}) {
      ObservableSpec qj = build_Q_j(m, 1, pauli_operator(Region{2}, "X"), variant);
      EXPECT_NEAR(exact_expectation(psi, qj.op), 0.0, 1e-10) << variant;
      EXPECT_TRUE(qj.lambda.contains(1));
    }
  }
}

// Observables are not trivially zero on other states.
TEST(Observables, DistinguishOtherStates) {
  ModelSpec m = fixtures::chain4_zero().with_beta(0.25);
  ModelSpec flipped = m;
  flipped.product_state[2] = {cplx(0, 0), cplx(1, 0)};
  StateVector other = build_state(flipped);
  auto zp = build_Z_pm(m, Region{1, 2}).first;
  EXPECT_LT(exact_expectation(other, zp.op), 0.5);
}

TEST(Observables, RequiresVanishingElement) {
  ModelSpec m = fixtures::chain4_zero().with_beta(0.2);
  EXPECT_THROW(build_Q_lambda(m, Region{1}, pauli_operator(Region{1}, "Z")), DomainError);
  EXPECT_NO_THROW(build_Q_lambda(m, Region{1, 2}, pauli_operator(Region{1, 2}, "ZX")));
  EXPECT_THROW(build_Q_lambda(m, Region{1}, pauli_operator(Region{2}, "X")), std::invalid_argument);
  EXPECT_THROW(build_Q_j(m, 1, pauli_operator(Region{1}, "X"), 1), std::invalid_argument);
  EXPECT_THROW(build_Q_j(m, 1, pauli_operator(Region{2}, "X"), 4), std::invalid_argument);
  EXPECT_EQ(vanishing_element(pauli_operator(Region{1}, "X"), Region{1}), 0.0);
  EXPECT_EQ(vanishing_element(pauli_operator(Region{1}, "Z"), Region{1}), 1.0);
}

TEST(PauliStrings, OrderAndSize) {
  auto s = pauli_strings(2);
  ASSERT_EQ(s.size(), 16u);
  EXPECT_EQ(s.front(), "II");
  EXPECT_EQ(s[1], "IX");
  EXPECT_EQ(s[4], "XI");
  EXPECT_EQ(s.back(), "ZZ");
  EXPECT_EQ(pauli_strings(3).size(), 64u);
}

TEST(CompleteMap, KindsByLetters) {
  ModelSpec m = fixtures::gibbs_path_zero(3).with_beta(0.2);
  EXPECT_EQ(complete_map(m, "III").kind, ObservableKind::kIdentity);
  EXPECT_EQ(complete_map(m, "IZZ").kind, ObservableKind::kZplus);
  EXPECT_EQ(complete_map(m, "XIZ").kind, ObservableKind::kQlambda);
  EXPECT_THROW(complete_map(m, "XZ"), std::invalid_argument);
  EXPECT_THROW(complete_map(m, "XQZ"), std::invalid_argument);
}

// Without any deformation the map is the identity on Pauli strings.
TEST(Gram, IdentityAtZeroBeta) {
  GramReport g = completeness_gram(fixtures::gibbs_path_zero(3).with_beta(0.0));
  EXPECT_EQ(g.dimension, 64);
  EXPECT_LT(linalg::max_abs(g.b - CMatrix::Identity(64, 64)), 1e-12);
  EXPECT_TRUE(g.nonsingular);
  EXPECT_THROW(completeness_gram(fixtures::gibbs_path_zero(5)), BudgetExceeded);
}

TEST(Gram, WorkerCountDoesNotMatter) {
  ModelSpec m = fixtures::gibbs_path_zero(3).with_beta(0.3);
  GramReport a = completeness_gram(m, 4, 1), b = completeness_gram(m, 4, 3);
  EXPECT_LT(linalg::max_abs(a.b - b.b), 1e-14);
  EXPECT_TRUE(a.nonsingular);
  EXPECT_GE(a.condition, 1.0);
}

TEST(ZeroFrame, RotatesBackToTheModel) {
  ModelSpec m = fixtures::chain4(0.2);
  ZeroFrame f = zero_frame(m);
  EXPECT_TRUE(f.rotated.all_zero_product());
  StateVector psi = build_state(m);
  StateVector rot = build_state(f.rotated);
  auto [zp, zm] = build_Z_pm(f.rotated, Region{1, 2});
  EXPECT_NEAR(exact_expectation(rot, zp.op), 1.0, 1e-10);
  ObservableSpec back = to_model_frame(zp, f);
  EXPECT_NEAR(exact_expectation(psi, back.op), 1.0, 1e-10);
  ObservableSpec q = to_model_frame(build_Q_j(f.rotated, 2, pauli_operator(Region{3}, "Z"), 2), f);
  EXPECT_NEAR(exact_expectation(psi, q.op), 0.0, 1e-10);
  EXPECT_LT(linalg::max_abs(back.expansion.reconstruct() - back.op.matrix()), 1e-12);
}

}  // namespace
}  // namespace tnsprep
