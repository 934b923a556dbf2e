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
#include <map>

#include "tnsprep/exact_oracle.hpp"
#include "tnsprep/sampling.hpp"

namespace tnsprep {
namespace {

TEST(RoundRng, CounterBased) {
  RoundRng a(7, 3), b(7, 3), c(7, 4);
  std::uint64_t x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  double sum = 0.0;
  for (int k = 0; k < 10000; ++k) {
    double u = a.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    int v = a.below(3);
    ASSERT_GE(v, 0);
    ASSERT_LT(v, 3);
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(ProverSpec, ParseAndTag) {
  EXPECT_EQ(ProverSpec::parse("honest").kind, ProverSpec::Kind::kHonest);
  ProverSpec d = ProverSpec::parse("depolarized:0.25");
  EXPECT_EQ(d.kind, ProverSpec::Kind::kDepolarized);
  EXPECT_DOUBLE_EQ(d.p, 0.25);
  EXPECT_EQ(ProverSpec::parse(d.tag()).p, 0.25);
  EXPECT_EQ(ProverSpec::parse("marginal").tag(), "marginal");
  EXPECT_EQ(ProverSpec::parse("signalling").kind, ProverSpec::Kind::kSignalling);
  EXPECT_THROW(ProverSpec::parse("depolarized:2"), std::invalid_argument);
  EXPECT_THROW(ProverSpec::parse("liar"), std::invalid_argument);
}

TEST(Sample, IdenticalForAnyWorkerCount) {
  StateVector psi = build_state(fixtures::chain4(0.2));
  BasisPlan plan;
  SampleSet a = sample(psi, {}, plan, 3000, 11, 1);
  SampleSet b = sample(psi, {}, plan, 3000, 11, 4);
  EXPECT_EQ(a.bases, b.bases);
  EXPECT_EQ(a.bits, b.bits);
  // Rounds are addressable: a suffix starting at round 1000 matches.
  SampleSet tail = sample(psi, {}, plan, 2000, 11, 2, 1000);
  EXPECT_TRUE(std::equal(tail.bits.begin(), tail.bits.end(), a.bits.begin() + 1000 * 4));
  SampleSet other = sample(psi, {}, plan, 3000, 12, 1);
  EXPECT_NE(a.bits, other.bits);
}

// Outcome frequencies per basis string agree with the Born rule.
TEST(Sample, MatchesBornProbabilities) {
  StateVector psi = build_state(fixtures::gibbs4(0.3));
  BasisPlan plan;
  plan.distribution = BasisDistribution::kFixedList;
  plan.list = {"zzzz", "xxzy", "yxxz"};
  const std::size_t count = 60000;
  SampleSet s = sample(psi, {}, plan, count, 99, 2);
  for (std::size_t b = 0; b < plan.list.size(); ++b) {
    std::vector<double> p = outcome_distribution(psi, {0, 1, 2, 3}, plan.list[b]);
    std::map<int, int> hits;
    int total = 0;
    for (std::size_t r = b; r < count; r += plan.list.size()) {
      ASSERT_EQ(s.round(r).basis, plan.list[b]);
      int idx = 0;
      for (int q = 0; q < 4; ++q) idx = idx * 2 + s.bits[r * 4 + q];
      ++hits[idx];
      ++total;
    }
    for (int k = 0; k < 16; ++k) {
      double f = static_cast<double>(hits[k]) / total;
      EXPECT_NEAR(f, p[k], 5.0 * std::sqrt(p[k] * (1 - p[k]) / total) + 1e-9) << plan.list[b] << " " << k;
    }
  }
}

TEST(Sample, DistributionSumsToOne) {
  StateVector psi = build_state(fixtures::chain4(0.2));
  std::vector<double> p = outcome_distribution(psi, {2, 0}, "xy");
  ASSERT_EQ(p.size(), 4u);
  double sum = 0.0;
  for (double v : p) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  // <Z_0> from the marginal.
  std::vector<double> z = outcome_distribution(psi, {0}, "z");
  EXPECT_NEAR(z[0] - z[1], exact_expectation(psi, pauli_operator(Region{0}, "Z")), 1e-12);
  EXPECT_THROW(outcome_distribution(psi, {0, 1}, "x"), std::invalid_argument);
}

TEST(Sample, MarginalProverHasHonestSingleSiteMarginals) {
  StateVector psi = build_state(fixtures::chain4(0.3));
  ProverSpec cheat = ProverSpec::parse("marginal");
  SampleSet s = sample(psi, cheat, {}, 40000, 5, 2);
  for (int q = 0; q < 4; ++q)
    for (int b = 0; b < 3; ++b) {
      std::vector<double> p = outcome_distribution(psi, {q}, std::string(1, kBasisLetters[b]));
      int n = 0, minus = 0;
      for (std::size_t r = 0; r < s.size(); ++r)
        if (s.basis(r, q) == b) {
          ++n;
          minus += s.bits[r * 4 + q];
        }
      double f = static_cast<double>(minus) / n;
      EXPECT_NEAR(f, p[1], 5.0 * std::sqrt(p[1] * (1 - p[1]) / n) + 1e-9);
    }
}

TEST(Transcript, RoundTrip) {
  StateVector psi = build_state(fixtures::chain4(0.1));
  SampleSet s = sample(psi, {}, {}, 50, 3);
  std::string text = transcript(s);
  SampleSet back = parse_transcript(text);
  EXPECT_EQ(back.n, 4);
  EXPECT_EQ(back.bases, s.bases);
  EXPECT_EQ(back.bits, s.bits);
  EXPECT_EQ(s.round(0).basis.size(), 4u);
  EXPECT_THROW(parse_transcript("xz +\n"), std::invalid_argument);
  SampleSet both = s;
  both.append(back);
  EXPECT_EQ(both.size(), 100u);
}

TEST(Basis, Codes) {
  EXPECT_EQ(basis_code('x'), 0);
  EXPECT_EQ(basis_code('y'), 1);
  EXPECT_EQ(basis_code('z'), 2);
  EXPECT_THROW(basis_code('w'), std::invalid_argument);
}

}  // namespace
}  // namespace tnsprep
