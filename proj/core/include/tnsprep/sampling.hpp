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
#include <string>
#include <vector>

#include "tnsprep/state_engine.hpp"

namespace tnsprep {

/// Basis codes: 0 = x, 1 = y, 2 = z.
inline constexpr char kBasisLetters[3] = {'x', 'y', 'z'};
int basis_code(char letter);

/// Counter-based stream: round r of master seed s always yields the same
/// draws, independent of which thread generates it.
class RoundRng {
 public:
  RoundRng(std::uint64_t seed, std::uint64_t round);
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  int below(int n);

 private:
  std::uint64_t state_;
};

struct MeasurementRound {
  std::string basis;
  std::string outcome;  // '+' or '-' per qubit
};

enum class BasisDistribution { kUniformIid, kFixedList };

struct SampleSet {
  int n = 0;
  std::uint64_t seed = 0;
  std::string prover_tag;
  BasisDistribution distribution = BasisDistribution::kUniformIid;
  /// Row-major rounds x n.
  std::vector<std::uint8_t> bases;
  /// 0 for outcome +1, 1 for -1.
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return n ? bases.size() / n : 0; }
  int basis(std::size_t r, int q) const { return bases[r * n + q]; }
  int sign(std::size_t r, int q) const { return bits[r * n + q] ? -1 : 1; }
  MeasurementRound round(std::size_t r) const;
  /// Appends rounds of another set with the same n.
  void append(const SampleSet& other);
};

struct ProverSpec {
  enum class Kind { kHonest, kDepolarized, kMarginal, kSignalling };
  Kind kind = Kind::kHonest;
  /// Depolarizing probability per qubit.
  double p = 0.0;
  /// Signalling cheat: when qubit 1 is measured in x, qubit 0 reports +1
  /// with this probability regardless of the state.
  double signal_strength = 0.3;

  /// "honest", "depolarized:p", "marginal" or "signalling".
  static ProverSpec parse(const std::string& text);
  std::string tag() const;
};

struct BasisPlan {
  BasisDistribution distribution = BasisDistribution::kUniformIid;
  /// Cycled in order for kFixedList.
  std::vector<std::string> list;
};

/// Outcome probabilities of measuring `vertices` of psi in the given bases,
/// indexed with the first vertex as the most significant bit (bit 1 = -1).
std::vector<double> outcome_distribution(const StateVector& psi, const std::vector<Vertex>& vertices,
                                         const std::string& bases);

/// Samples `count` rounds from the prover. Honest rounds follow
/// P(s|alpha) = <Psi| (x)_j (1 + s_j sigma_alpha_j)/2 |Psi> by sequential
/// conditional bit sampling; identical arguments give identical rounds for
/// any worker count.
SampleSet sample(const StateVector& psi, const ProverSpec& prover, const BasisPlan& plan,
                 std::size_t count, std::uint64_t seed, int workers = 1,
                 std::size_t first_round = 0);

/// "xzyx +-++" per line.
std::string transcript(const SampleSet& s);
SampleSet parse_transcript(const std::string& text);

}  // namespace tnsprep
