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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnsprep/observables.hpp"
#include "tnsprep/sampling.hpp"

namespace tnsprep {

/// Some Pauli term of an estimator has no matching round.
class InsufficientCoverage : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Too few rounds for a consistency test.
class InsufficientCounts : public DomainError {
 public:
  using DomainError::DomainError;
};

struct Conditioning {
  enum class Kind { kAny, kRestrictOffSupport };
  Kind kind = Kind::kAny;
  /// Basis every site outside the observable's support must have been
  /// measured in, for kRestrictOffSupport.
  char basis = 'z';

  /// "any" or "restrict:<x|y|z>".
  static Conditioning parse(const std::string& text);
  std::string describe() const;
};

struct EstimatorReport {
  std::string target;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t rounds_used = 0;
  std::string conditioning;
};

/// sum_gamma o(gamma) sbar(gamma), sbar averaged over the rounds whose
/// bases match gamma on its non-identity sites. The standard error comes
/// from the per-round influence on the estimate (rounds are independent,
/// Pauli terms sharing a round are correlated).
EstimatorReport estimate_expansion(const SampleSet& samples, const PauliExpansion& expansion,
                                   const Conditioning& conditioning = {},
                                   const std::string& target = "");
EstimatorReport estimate_observable(const SampleSet& samples, const ObservableSpec& spec,
                                    const Conditioning& conditioning = {});

/// Importance-weighted single-round value sum_J 3^|J| o_J [bases match] s_J.
class HhatEvaluator {
 public:
  explicit HhatEvaluator(const PauliExpansion& expansion);
  double operator()(const SampleSet& samples, std::size_t round) const;
  int locality() const { return locality_; }

 private:
  struct Term {
    std::vector<std::pair<int, int>> sites;  // (vertex, basis code)
    double weight;
  };
  double constant_ = 0.0;
  std::vector<Term> terms_;
  int locality_ = 0;
};

struct EnergyTermReport {
  int term = 0;
  int locality = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::size_t rounds_used = 0;
  /// 2^(5 |lambda|).
  double variance_bound = 0.0;
  bool within_bound = false;
};

struct EnergyReport {
  std::vector<EnergyTermReport> terms;
  double total = 0.0;
  double total_se = 0.0;
};

/// Each term gets its own disjoint batch of rounds. Empty batch_sizes
/// splits the rounds equally (remainder unused).
EnergyReport estimate_energy_random_basis(const SampleSet& samples,
                                          const std::vector<LocalOperator>& terms,
                                          const std::vector<std::size_t>& batch_sizes = {});

struct HhatMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact mean and variance of the single-round estimator for an honest
/// prover holding psi (uniform iid bases).
HhatMoments exact_hhat_moments(const StateVector& psi, const LocalOperator& term);

struct FidelityBound {
  double lower = 0.0;
  double conservative = 0.0;
};

/// 1 - E/delta and 1 - (E + err)/delta, both clipped above at 1.
FidelityBound fidelity_lower_bound(double energy, double energy_error, double delta);

struct SamplePlan {
  double epsilon = 0.1;
  double alpha_conf = 0.05;
  int locality = 1;
  double delta = 1.0;
  int n = 1;
  double sigma_assumed = 0.0;
  /// Per-term confidence bound 2^(5|lambda|+1) / (delta^2 eps^2) ln(1/alpha) / N.
  std::size_t per_term = 0;
  /// Total-budget estimate sigma^2 N^2 / delta^2.
  std::size_t total = 0;
  std::string per_term_source;
  std::string total_source;
  std::string note;
};

SamplePlan plan_samples(int locality, double delta, double epsilon, double alpha_conf, int n,
                        std::optional<double> sigma_assumed = std::nullopt);

/// Rounds per term such that the conservative energy error, plus three
/// standard errors of slack, stays below epsilon * delta, sized from the
/// exact single-round variances of the honest state.
std::size_t variance_sized_rounds(const StateVector& psi, const std::vector<LocalOperator>& terms,
                                  double delta, double epsilon, double alpha_conf);

/// sqrt(2 ln(1/alpha)): one-sided Gaussian tail multiplier used for the
/// conservative energy error.
double confidence_multiplier(double alpha_conf);

struct ProportionTest {
  int basis_i_a = 0;
  int basis_i_b = 0;
  int basis_j = 0;
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  double freq_a = 0.0;
  double freq_b = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

struct ConsistencyReport {
  int i = 0;
  int j = 0;
  std::vector<ProportionTest> tests;
  /// Bonferroni-adjusted over the tests above.
  double p_value = 1.0;
  double significance = 0.01;
  bool pass = true;
};

/// Does the distribution of s_j (stratified by the basis at j) change with
/// the basis chosen at i? Two-sided pooled two-proportion z tests.
ConsistencyReport consistency_check(const SampleSet& samples, int i, int j,
                                    double significance = 0.01, std::size_t min_count = 30);

struct MenuCheck {
  EstimatorReport report;
  double expected = 0.0;
  bool covered = true;
  bool pass = false;
};

struct VerificationConfig {
  SamplePlan plan;
  /// Certified gap lower bound.
  double delta = 0.0;
  std::vector<ObservableSpec> menu;
  double significance = 0.01;
  std::uint64_t seed = 1;
  int workers = 1;
  /// Rounds per term; 0 uses plan.per_term.
  std::size_t rounds_per_term = 0;
  /// Consistency pairs; empty checks every ordered pair.
  std::vector<std::pair<int, int>> consistency_pairs;
};

struct VerificationReport {
  bool accept = false;
  std::vector<std::string> reasons;
  EnergyReport energy;
  double energy_error = 0.0;
  FidelityBound fidelity;
  std::vector<MenuCheck> checks;
  std::vector<ConsistencyReport> consistency;
  double consistency_p_value = 1.0;
  bool consistency_pass = true;
  SampleSet samples;

  std::string summary() const;
};

/// Samples from the prover, estimates the energy with the random-basis
/// estimator, bounds the fidelity, runs the menu and consistency checks.
/// ACCEPT iff the conservative fidelity bound is at least 1 - epsilon, every
/// menu estimate lies within 5 standard errors of its expected value and
/// every consistency test passes.
VerificationReport run_verification(const ParentHamiltonian& ph, const StateVector& psi,
                                    const ProverSpec& prover, const VerificationConfig& config);
VerificationReport run_verification(const ModelSpec& model, const ProverSpec& prover,
                                    const VerificationConfig& config);

}  // namespace tnsprep
