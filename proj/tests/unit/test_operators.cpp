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

#include <random>

#include "tnsprep/operators.hpp"

namespace tnsprep {
namespace {

CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

// Taylor series, independent of the eigendecomposition used by herm_exp.
CMatrix taylor_exp(const CMatrix& a) {
  CMatrix term = CMatrix::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  return sum;
}

TEST(LocalOperator, StripsIdentityFactors) {
  // Z (x) 1 on {3, 5} is Z on {3}.
  LocalOperator op(Region{3, 5}, linalg::kron(pauli('Z'), pauli('I')));
  EXPECT_EQ(op.support(), Region{3});
  EXPECT_LT(linalg::max_abs(op.matrix() - pauli('Z')), 1e-14);
  LocalOperator id(Region{0, 1}, CMatrix::Identity(4, 4) * 2.0);
  EXPECT_TRUE(id.support().empty());
  EXPECT_NEAR(id.matrix()(0, 0).real(), 2.0, 1e-14);
}

TEST(LocalOperator, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(LocalOperator(Region{0}, m), std::invalid_argument);
  EXPECT_THROW(LocalOperator(Region{0}, CMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(Embed, MatchesKroneckerOrdering) {
  // X on vertex 1 inside {0, 1, 2} is 1 (x) X (x) 1.
  CMatrix got = embed_matrix(Region{1}, pauli('X'), Region{0, 1, 2});
  CMatrix want = linalg::kron(linalg::kron(pauli('I'), pauli('X')), pauli('I'));
  EXPECT_LT(linalg::max_abs(got - want), 1e-15);
  // Non-adjacent two-site operator: Z on 0 and Y on 2.
  got = embed_matrix(Region{0, 2}, linalg::kron(pauli('Z'), pauli('Y')), Region{0, 1, 2});
  want = linalg::kron(linalg::kron(pauli('Z'), pauli('I')), pauli('Y'));
  EXPECT_LT(linalg::max_abs(got - want), 1e-15);
  EXPECT_THROW(embed_matrix(Region{3}, pauli('X'), Region{0, 1}), std::invalid_argument);
}

TEST(ApplyLocal, AgreesWithGlobalMatrix) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const int n = 4;
  CVector psi(1 << n);
  for (int i = 0; i < psi.size(); ++i) psi(i) = cplx(g(rng), g(rng));
  for (const Region& s : {Region{0}, Region{3}, Region{1, 3}, Region{0, 2, 3}}) {
    CMatrix m = random_hermitian(1 << s.size(), rng);
    LocalMatrix lm(s, m);
    CVector a = psi;
    apply_local(lm, a, n);
    CVector b = global_matrix(lm, n) * psi;
    EXPECT_LT((a - b).norm(), 1e-12);
  }
}

TEST(PartialTrace, OfProductIsScaledFactor) {
  CMatrix a = pauli('X') + 2.0 * pauli('I');
  CMatrix b = pauli('Z') + 3.0 * pauli('I');
  CMatrix ab = linalg::kron(a, b);
  CMatrix tr_b = partial_trace(Region{0, 1}, ab, Region{1});
  EXPECT_LT(linalg::max_abs(tr_b - a * b.trace()), 1e-13);
  CMatrix tr_a = partial_trace(Region{0, 1}, ab, Region{0});
  EXPECT_LT(linalg::max_abs(tr_a - b * a.trace()), 1e-13);
}

TEST(HermExp, MatchesTaylorSeries) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 5; ++k) {
    CMatrix h = random_hermitian(4, rng) * 0.3;
    LocalOperator op(Region{0, 1}, h);
    for (cplx s : {cplx(-0.7, 0), cplx(0, 1.3), cplx(0.2, -0.4)}) {
      CMatrix got = herm_exp(op, s).on(Region{0, 1});
      CMatrix want = taylor_exp(s * op.on(Region{0, 1}));
      EXPECT_LT(linalg::max_abs(got - want), 1e-11);
    }
  }
}

TEST(Commutator, DisjointAndOverlapping) {
  LocalMatrix x0(Region{0}, pauli('X')), z1(Region{1}, pauli('Z')), z0(Region{0}, pauli('Z'));
  EXPECT_LT(commutator_residual(x0, z1), 1e-15);
  EXPECT_NEAR(commutator_residual(x0, z0), 2.0, 1e-12);
}

TEST(Pauli, DecomposeReconstructsRandomOperators) {
  std::mt19937_64 rng(11);
  for (int q = 1; q <= 3; ++q) {
    Region s;
    std::vector<Vertex> vs;
    for (int v = 0; v < q; ++v) vs.push_back(2 * v);
    s = Region(vs);
    LocalOperator op(s, random_hermitian(1 << q, rng));
    PauliExpansion e = pauli_decompose(op);
    EXPECT_LT(linalg::max_abs(e.reconstruct() - op.matrix()), 1e-12);
    // Coefficients are tr(P op) / 2^q.
    for (const auto& [letters, c] : e.terms) {
      cplx tr = (pauli_string_matrix(letters) * op.matrix()).trace() / double(1 << q);
      EXPECT_NEAR(tr.real(), c, 1e-12);
      EXPECT_NEAR(tr.imag(), 0.0, 1e-12);
    }
  }
}

TEST(Pauli, NamedOperators) {
  PauliExpansion e = pauli_decompose(named::ising_edge(0, 1));
  ASSERT_EQ(e.terms.size(), 2u);
  EXPECT_NEAR(e.terms.at("II"), 0.5, 1e-15);
  EXPECT_NEAR(e.terms.at("ZZ"), -0.5, 1e-15);
  LocalOperator p11 = named::projector11(2, 4);
  EXPECT_NEAR(p11.matrix()(3, 3).real(), 1.0, 1e-15);
  EXPECT_NEAR(p11.matrix().trace().real(), 1.0, 1e-15);
  LocalOperator pp = named::plus_projector(0);
  EXPECT_LT(linalg::max_abs(pp.matrix() - (pauli('I') + pauli('X')) / 2.0), 1e-15);
}

TEST(Family, ValidationFlagsEachViolation) {
  Graph g = lattices::path(4);
  CommutingFamily ok;
  ok.terms = {named::ising_edge(0, 1), named::ising_edge(1, 2)};
  ok.declared_radius = 1;
  EXPECT_TRUE(validate_family(ok, g).accepted());

  CommutingFamily noncomm = ok;
  noncomm.terms.push_back(named::plus_projector(1));
  auto rep = validate_family(noncomm, g);
  ASSERT_FALSE(rep.accepted());
  EXPECT_EQ(rep.violations[0].kind, FamilyViolation::Kind::kNonCommuting);

  CommutingFamily big = ok;
  big.terms.push_back(LocalOperator(Region{3}, pauli('I') * 2.0 + pauli('Z')));
  rep = validate_family(big, g);
  ASSERT_FALSE(rep.accepted());
  EXPECT_EQ(rep.violations[0].kind, FamilyViolation::Kind::kNormExceeded);

  CommutingFamily neg = ok;
  neg.terms.push_back(LocalOperator(Region{3}, pauli('Z')));
  rep = validate_family(neg, g);
  ASSERT_FALSE(rep.accepted());
  EXPECT_EQ(rep.violations[0].kind, FamilyViolation::Kind::kNotPsd);

  CommutingFamily wide = ok;
  wide.terms.push_back(LocalOperator(Region{0, 3}, (linalg::kron(pauli('I'), pauli('I')) -
                                                     linalg::kron(pauli('Z'), pauli('Z'))) /
                                                        2.0));
  rep = validate_family(wide, g);
  ASSERT_FALSE(rep.accepted());
  EXPECT_EQ(rep.violations[0].kind, FamilyViolation::Kind::kRadiusExceeded);

  CommutingFamily outside = ok;
  outside.terms.push_back(named::plus_projector(9));
  rep = validate_family(outside, g);
  ASSERT_FALSE(rep.accepted());
  EXPECT_EQ(rep.violations[0].kind, FamilyViolation::Kind::kBadVertex);
}

TEST(Family, ConjugatedFamilyCommutes) {
  Graph g = lattices::path(4);
  // Controlled-Z style diagonal unitaries commute with each other.
  std::vector<LocalMatrix> us;
  for (auto [a, b] : g.edges()) us.push_back(herm_exp(named::projector11(a, b), cplx(0, 0.9)));
  std::vector<LocalOperator> seeds;
  for (Vertex v = 0; v < 4; ++v) seeds.push_back(named::plus_projector(v));
  CommutingFamily f = conjugated_family(g, us, seeds);
  EXPECT_TRUE(validate_family(f, g).accepted());
  EXPECT_EQ(f.declared_radius, 1);
  // Overlapping seeds are rejected.
  seeds.push_back(named::plus_projector2(0, 1));
  EXPECT_THROW(conjugated_family(g, us, seeds), std::invalid_argument);
}

TEST(Family, ToricUnitariesRequireAnticommutation) {
  std::vector<double> ta = {0.3, 0.1}, tb = {0.2, 0.4};
  auto us = toric_type_unitaries(3, 3, pauli('X'), pauli('Z'), ta, tb);
  EXPECT_EQ(us.size(), 4u);
  EXPECT_THROW(toric_type_unitaries(3, 3, pauli('X'), pauli('X'), ta, tb), std::invalid_argument);
  EXPECT_THROW(toric_type_unitaries(3, 3, pauli('X'), pauli('Z'), {0.3}, tb), std::invalid_argument);
}

}  // namespace
}  // namespace tnsprep
