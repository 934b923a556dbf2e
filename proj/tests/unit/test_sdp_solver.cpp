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

#include "tnsprep/sdp_solver.hpp"

namespace tnsprep {
namespace {

SdpProblem scalar_bound() {
  SdpProblem p;
  p.var_count = 1;
  p.objective = RVector::Ones(1);
  SdpBlock b;
  b.f0 = RMatrix::Constant(1, 1, 2.0);
  b.coeffs.emplace_back(0, RMatrix::Constant(1, 1, -1.0));
  p.blocks.push_back(b);
  p.eq_a.resize(0, 1);
  p.eq_b.resize(0);
  return p;
}

SdpProblem diagonal_pair() {
  SdpProblem p;
  p.var_count = 2;
  p.objective = RVector::Ones(2);
  SdpBlock b;
  b.f0 = RMatrix::Identity(2, 2);
  RMatrix e0 = RMatrix::Zero(2, 2), e1 = RMatrix::Zero(2, 2);
  e0(0, 0) = -1.0;
  e1(1, 1) = -1.0;
  b.coeffs.emplace_back(0, e0);
  b.coeffs.emplace_back(1, e1);
  p.blocks.push_back(b);
  p.eq_a.resize(0, 2);
  p.eq_b.resize(0);
  return p;
}

TEST(Solve, ScalarBound) {
  SdpSolution s = solve(scalar_bound());
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.y(0), 2.0, 1e-7);
  EXPECT_LE(s.duality_gap, 1e-7);
}

TEST(Solve, DiagonalPair) {
  SdpSolution s = solve(diagonal_pair());
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.y(0), 1.0, 1e-7);
  EXPECT_NEAR(s.y(1), 1.0, 1e-7);
  EXPECT_NEAR(s.objective_value, 2.0, 1e-7);
}

// maximize x s.t. A - x 1 >= 0 has optimum lambda_min(A).
TEST(Solve, MinimumEigenvalueProblems) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int dim : {3, 6, 10}) {
    RMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c <= r; ++c) a(r, c) = a(c, r) = g(rng);
    SdpProblem p;
    p.var_count = 1;
    p.objective = RVector::Ones(1);
    SdpBlock b;
    b.f0 = a;
    b.coeffs.emplace_back(0, -RMatrix::Identity(dim, dim));
    p.blocks.push_back(b);
    p.eq_a.resize(0, 1);
    p.eq_b.resize(0);
    SdpSolution s = solve(p);
    ASSERT_EQ(s.status, SdpStatus::kOptimal);
    EXPECT_NEAR(s.y(0), linalg::jacobi_eigenvalues(a)(0), 1e-6);
  }
}

// maximize y s.t. [[1, y], [y, 1]] >= 0: optimum 1 on the boundary.
TEST(Solve, RankDeficientOptimum) {
  SdpProblem p;
  p.var_count = 1;
  p.objective = RVector::Ones(1);
  SdpBlock b;
  b.f0 = RMatrix::Identity(2, 2);
  RMatrix off = RMatrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = 1.0;
  b.coeffs.emplace_back(0, off);
  p.blocks.push_back(b);
  p.eq_a.resize(0, 1);
  p.eq_b.resize(0);
  SdpSolution s = solve(p);
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.y(0), 1.0, 1e-6);
}

TEST(Solve, EqualityConstraints) {
  // maximize 2 y0 + y1 s.t. y0 + y1 = 1, 0 <= y0 <= 0.7, y1 >= 0.
  SdpProblem p;
  p.var_count = 2;
  p.objective = RVector(2);
  p.objective << 2.0, 1.0;
  SdpBlock b;
  b.f0 = RMatrix::Zero(3, 3);
  b.f0(1, 1) = 0.7;
  RMatrix e0 = RMatrix::Zero(3, 3), e1 = RMatrix::Zero(3, 3);
  e0(0, 0) = 1.0;
  e0(1, 1) = -1.0;
  e1(2, 2) = 1.0;
  b.coeffs.emplace_back(0, e0);
  b.coeffs.emplace_back(1, e1);
  p.blocks.push_back(b);
  p.eq_a = RMatrix::Ones(1, 2);
  p.eq_b = RVector::Ones(1);
  SdpSolution s = solve(p);
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.y(0), 0.7, 1e-6);
  EXPECT_NEAR(s.objective_value, 1.7, 1e-6);
  EXPECT_LT(s.equality_residual, 1e-9);
}

TEST(Solve, DetectsInfeasibility) {
  // y >= 1 and y <= 0.
  SdpProblem p;
  p.var_count = 1;
  p.objective = RVector::Ones(1);
  SdpBlock lo, hi;
  lo.f0 = RMatrix::Constant(1, 1, -1.0);
  lo.coeffs.emplace_back(0, RMatrix::Constant(1, 1, 1.0));
  hi.f0 = RMatrix::Zero(1, 1);
  hi.coeffs.emplace_back(0, RMatrix::Constant(1, 1, -1.0));
  p.blocks = {lo, hi};
  p.eq_a.resize(0, 1);
  p.eq_b.resize(0);
  EXPECT_NE(solve(p).status, SdpStatus::kOptimal);
}

TEST(Solve, Deterministic) {
  SdpProblem p = diagonal_pair();
  SdpSolution a = solve(p), b = solve(p);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Validate, RejectsBadData) {
  SdpProblem p = scalar_bound();
  p.objective = RVector::Ones(2);
  EXPECT_THROW(solve(p), std::invalid_argument);
  p = diagonal_pair();
  p.blocks[0].coeffs[0].second(0, 1) = 1.0;
  EXPECT_THROW(solve(p), std::invalid_argument);
  p = diagonal_pair();
  p.blocks[0].coeffs.emplace_back(5, RMatrix::Zero(2, 2));
  EXPECT_THROW(solve(p), std::invalid_argument);
  p = diagonal_pair();
  EXPECT_THROW(p.validate(1), std::invalid_argument);
}

TEST(Feasibility, AuditExamples) {
  SdpProblem p = scalar_bound();
  RVector y = RVector::Constant(1, 3.0);
  FeasibilityReport bad = verify_feasibility(p, y);
  EXPECT_FALSE(bad.feasible);
  EXPECT_NEAR(bad.min_eig, -1.0, 1e-12);
  FeasibilityReport zero = verify_feasibility(diagonal_pair(), RVector::Zero(2));
  EXPECT_TRUE(zero.feasible);
  EXPECT_THROW(verify_feasibility(p, RVector::Zero(3)), std::invalid_argument);
  SdpSolution s = solve(diagonal_pair());
  EXPECT_TRUE(verify_feasibility(diagonal_pair(), s.y).feasible);
}

TEST(Jacobi, AgreesWithEigen) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int dim : {2, 5, 12}) {
    RMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c <= r; ++c) a(r, c) = a(c, r) = g(rng);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
    EXPECT_LT((linalg::jacobi_eigenvalues(a) - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-11);
  }
  // Complex Hermitian through the real embedding.
  CMatrix h(2, 2);
  h << 1.0, cplx(0, 1), cplx(0, -1), 1.0;
  EXPECT_NEAR(linalg::jacobi_min_eigenvalue(h), 0.0, 1e-13);
}

TEST(Io, RoundTrip) {
  SdpProblem p = diagonal_pair();
  p.eq_a = RMatrix::Ones(1, 2);
  p.eq_b = RVector::Constant(1, 1.5);
  SdpProblem q = load_problem(dump_problem(p));
  EXPECT_EQ(q.var_count, p.var_count);
  EXPECT_EQ(q.objective, p.objective);
  EXPECT_EQ(q.eq_a, p.eq_a);
  EXPECT_EQ(q.eq_b, p.eq_b);
  ASSERT_EQ(q.blocks.size(), 1u);
  EXPECT_EQ(q.blocks[0].f0, p.blocks[0].f0);
  EXPECT_EQ(solve(q).y, solve(p).y);
  EXPECT_THROW(load_problem("{not json"), std::invalid_argument);
}

}  // namespace
}  // namespace tnsprep
