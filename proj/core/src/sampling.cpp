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

#include "tnsprep/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace tnsprep {

int basis_code(char letter) {
  switch (letter) {
    case 'x': case 'X': return 0;
    case 'y': case 'Y': return 1;
    case 'z': case 'Z': return 2;
    default: throw std::invalid_argument(std::string("bad basis letter '") + letter + "'");
  }
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kOutcomeSalt = 0xD1B54A32D192ED03ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Maps the measured eigenbasis of sigma_alpha onto the computational basis.
CMatrix rotation(int code) {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix u(2, 2);
  switch (code) {
    case 0: u << r, r, r, -r; break;
    case 1: u << r, cplx(0, -r), r, cplx(0, r); break;  // H S^dag
    default: u = CMatrix::Identity(2, 2); break;
  }
  return u;
}

// Prefix marginals of a 2^n distribution: level k occupies
// [2^k - 1, 2^{k+1} - 1) and holds the probability of each k-bit prefix.
std::vector<double> prefix_table(const CVector& amps, int n) {
  std::vector<double> t((std::size_t{2} << n) - 1, 0.0);
  const std::size_t leaf = (std::size_t{1} << n) - 1;
  for (Eigen::Index i = 0; i < amps.size(); ++i) t[leaf + i] = std::norm(amps(i));
  for (int k = n - 1; k >= 0; --k) {
    std::size_t base = (std::size_t{1} << k) - 1, child = (std::size_t{1} << (k + 1)) - 1;
    for (std::size_t p = 0; p < (std::size_t{1} << k); ++p)
      t[base + p] = t[child + 2 * p] + t[child + 2 * p + 1];
  }
  return t;
}

std::vector<double> table_for(const StateVector& psi, const std::uint8_t* bases, int n) {
  CVector v = psi.amplitudes;
  for (int q = 0; q < n; ++q)
    if (bases[q] != 2) apply_local(LocalMatrix(Region{q}, rotation(bases[q])), v, n);
  return prefix_table(v, n);
}

void sample_bits(const std::vector<double>& t, int n, RoundRng& rng, std::uint8_t* out) {
  std::size_t prefix = 0;
  for (int k = 0; k < n; ++k) {
    const double total = t[(std::size_t{1} << k) - 1 + prefix];
    const double p0 = t[(std::size_t{1} << (k + 1)) - 1 + 2 * prefix];
    const int bit = rng.uniform() * total >= p0 ? 1 : 0;
    out[k] = static_cast<std::uint8_t>(bit);
    prefix = 2 * prefix + bit;
  }
}

std::uint32_t pattern_key(const std::uint8_t* bases, int n) {
  std::uint32_t k = 0;
  for (int q = 0; q < n; ++q) k = 3 * k + bases[q];
  return k;
}

}  // namespace

RoundRng::RoundRng(std::uint64_t seed, std::uint64_t round)
    : state_(mix(seed + kGolden) ^ mix(round * kGolden + 0x632BE59BD9B4E019ULL)) {}

std::uint64_t RoundRng::next() {
  state_ += kGolden;
  return mix(state_);
}

double RoundRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int RoundRng::below(int n) { return static_cast<int>(uniform() * n); }

MeasurementRound SampleSet::round(std::size_t r) const {
  MeasurementRound m;
  for (int q = 0; q < n; ++q) {
    m.basis.push_back(kBasisLetters[basis(r, q)]);
    m.outcome.push_back(bits[r * n + q] ? '-' : '+');
  }
  return m;
}

void SampleSet::append(const SampleSet& other) {
  if (other.n != n) throw std::invalid_argument("cannot append samples of a different width");
  bases.insert(bases.end(), other.bases.begin(), other.bases.end());
  bits.insert(bits.end(), other.bits.begin(), other.bits.end());
}

ProverSpec ProverSpec::parse(const std::string& text) {
  ProverSpec p;
  if (text == "honest") return p;
  if (text == "marginal") {
    p.kind = Kind::kMarginal;
    return p;
  }
  if (text == "signalling") {
    p.kind = Kind::kSignalling;
    return p;
  }
  if (text.rfind("depolarized:", 0) == 0) {
    p.kind = Kind::kDepolarized;
    try {
      p.p = std::stod(text.substr(12));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad depolarizing probability in '" + text + "'");
    }
    if (!(p.p >= 0.0 && p.p <= 1.0))
      throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    return p;
  }
  throw std::invalid_argument("unknown prover '" + text +
                              "', expected honest, depolarized:p, marginal or signalling");
}

std::string ProverSpec::tag() const {
  switch (kind) {
    case Kind::kHonest: return "honest";
    case Kind::kDepolarized: {
      std::ostringstream os;
      os << "depolarized:" << p;
      return os.str();
    }
    case Kind::kMarginal: return "marginal";
    case Kind::kSignalling: return "signalling";
  }
  return "?";
}

std::vector<double> outcome_distribution(const StateVector& psi, const std::vector<Vertex>& vertices,
                                         const std::string& bases) {
  const int n = psi.qubits();
  if (vertices.size() != bases.size())
    throw std::invalid_argument("one basis letter per measured vertex");
  CVector v = psi.amplitudes;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (vertices[k] < 0 || vertices[k] >= n) throw std::invalid_argument("vertex out of range");
    int code = basis_code(bases[k]);
    if (code != 2) apply_local(LocalMatrix(Region{vertices[k]}, rotation(code)), v, n);
  }
  const int k = static_cast<int>(vertices.size());
  std::vector<double> out(std::size_t{1} << k, 0.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::size_t idx = 0;
    for (int q = 0; q < k; ++q) idx = 2 * idx + ((i >> (n - 1 - vertices[q])) & 1);
    out[idx] += std::norm(v(i));
  }
  return out;
}

SampleSet sample(const StateVector& psi, const ProverSpec& prover, const BasisPlan& plan,
                 std::size_t count, std::uint64_t seed, int workers, std::size_t first_round) {
  const int n = psi.qubits();
  if (n < 1) throw std::invalid_argument("cannot sample an empty register");
  if (plan.distribution == BasisDistribution::kFixedList) {
    if (plan.list.empty()) throw std::invalid_argument("fixed basis list is empty");
    for (const auto& b : plan.list) {
      if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("basis string '" + b + "' has the wrong length");
      for (char c : b) basis_code(c);
    }
  }
  if (prover.kind == ProverSpec::Kind::kSignalling && n < 2)
    throw std::invalid_argument("signalling prover needs at least two qubits");
  SampleSet s;
  s.n = n;
  s.seed = seed;
  s.prover_tag = prover.tag();
  s.distribution = plan.distribution;
  s.bases.resize(count * n);
  s.bits.resize(count * n);

  for (std::size_t r = 0; r < count; ++r) {
    std::uint8_t* b = &s.bases[r * n];
    if (plan.distribution == BasisDistribution::kUniformIid) {
      RoundRng rng(seed, first_round + r);
      for (int q = 0; q < n; ++q) b[q] = static_cast<std::uint8_t>(rng.below(3));
    } else {
      const std::string& pat = plan.list[(first_round + r) % plan.list.size()];
      for (int q = 0; q < n; ++q) b[q] = static_cast<std::uint8_t>(basis_code(pat[q]));
    }
  }

  // Single-qubit +1 probabilities for the marginal prover.
  std::vector<std::array<double, 3>> marg(n);
  if (prover.kind == ProverSpec::Kind::kMarginal)
    for (int q = 0; q < n; ++q)
      for (int a = 0; a < 3; ++a)
        marg[q][a] = outcome_distribution(psi, {q}, std::string(1, kBasisLetters[a]))[0];

  const bool cache = n <= 8 && prover.kind != ProverSpec::Kind::kMarginal;
  std::unordered_map<std::uint32_t, std::vector<double>> tables;
  if (cache) {
    std::vector<std::uint32_t> keys;
    std::vector<std::size_t> first;
    for (std::size_t r = 0; r < count; ++r) {
      auto key = pattern_key(&s.bases[r * n], n);
      if (tables.emplace(key, std::vector<double>{}).second) {
        keys.push_back(key);
        first.push_back(r);
      }
    }
    for (std::size_t k = 0; k < keys.size(); ++k)
      tables[keys[k]] = table_for(psi, &s.bases[first[k] * n], n);
  }

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RoundRng rng(seed ^ kOutcomeSalt, first_round + r);
      const std::uint8_t* b = &s.bases[r * n];
      std::uint8_t* out = &s.bits[r * n];
      if (prover.kind == ProverSpec::Kind::kMarginal) {
        for (int q = 0; q < n; ++q) out[q] = rng.uniform() < marg[q][b[q]] ? 0 : 1;
        continue;
      }
      if (cache) {
        sample_bits(tables.at(pattern_key(b, n)), n, rng, out);
      } else {
        sample_bits(table_for(psi, b, n), n, rng, out);
      }
      if (prover.kind == ProverSpec::Kind::kDepolarized) {
        for (int q = 0; q < n; ++q)
          if (rng.uniform() < 0.5 * prover.p) out[q] ^= 1;
      } else if (prover.kind == ProverSpec::Kind::kSignalling) {
        if (b[1] == 0 && rng.uniform() < prover.signal_strength) out[0] = 0;
      }
    }
  };
  workers = std::max(1, workers);
  if (workers == 1 || count < 1024) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t b = w * chunk, e = std::min(count, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return s;
}

std::string transcript(const SampleSet& s) {
  std::string out;
  out.reserve(s.size() * (2 * s.n + 2));
  for (std::size_t r = 0; r < s.size(); ++r) {
    MeasurementRound m = s.round(r);
    out += m.basis;
    out += ' ';
    out += m.outcome;
    out += '\n';
  }
  return out;
}

SampleSet parse_transcript(const std::string& text) {
  SampleSet s;
  s.distribution = BasisDistribution::kFixedList;
  std::istringstream in(text);
  std::string basis, outcome;
  std::size_t line = 0;
  while (in >> basis >> outcome) {
    ++line;
    if (s.n == 0) s.n = static_cast<int>(basis.size());
    if (static_cast<int>(basis.size()) != s.n || outcome.size() != basis.size())
      throw std::invalid_argument("transcript line " + std::to_string(line) + " has the wrong width");
    for (int q = 0; q < s.n; ++q) {
      s.bases.push_back(static_cast<std::uint8_t>(basis_code(basis[q])));
      if (outcome[q] != '+' && outcome[q] != '-')
        throw std::invalid_argument("transcript line " + std::to_string(line) + ": bad outcome");
      s.bits.push_back(outcome[q] == '-' ? 1 : 0);
    }
  }
  return s;
}

}  // namespace tnsprep
