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

#include "tnsprep/verify_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tnsprep {

namespace {

struct ParsedTerm {
  std::string letters;
  std::vector<std::pair<int, int>> sites;  // (vertex, basis code)
  double coeff;
};

void parse_expansion(const PauliExpansion& e, double& constant, std::vector<ParsedTerm>& terms) {
  constant = 0.0;
  for (const auto& [letters, coeff] : e.terms) {
    ParsedTerm t{letters, {}, coeff};
    for (std::size_t q = 0; q < letters.size(); ++q)
      if (letters[q] != 'I') t.sites.emplace_back(e.support[q], basis_code(letters[q]));
    if (t.sites.empty()) constant += coeff;
    else terms.push_back(std::move(t));
  }
}

bool matches(const SampleSet& s, std::size_t r, const std::vector<std::pair<int, int>>& sites) {
  for (auto [v, b] : sites)
    if (s.basis(r, v) != b) return false;
  return true;
}

int product_sign(const SampleSet& s, std::size_t r, const std::vector<std::pair<int, int>>& sites) {
  int sign = 1;
  for (auto [v, b] : sites) sign *= s.sign(r, v);
  return sign;
}

}  // namespace

Conditioning Conditioning::parse(const std::string& text) {
  Conditioning c;
  if (text == "any") return c;
  if (text.size() == 10 && text.rfind("restrict:", 0) == 0) {
    c.kind = Kind::kRestrictOffSupport;
    c.basis = text[9];
    basis_code(c.basis);
    return c;
  }
  throw std::invalid_argument("unknown conditioning '" + text + "', expected any or restrict:<x|y|z>");
}

std::string Conditioning::describe() const {
  if (kind == Kind::kAny) return "any";
  return std::string("restrict:") + basis;
}

EstimatorReport estimate_expansion(const SampleSet& samples, const PauliExpansion& expansion,
                                   const Conditioning& conditioning, const std::string& target) {
  for (Vertex v : expansion.support)
    if (v >= samples.n) throw std::invalid_argument("observable support exceeds the register");
  EstimatorReport rep;
  rep.target = target;
  rep.conditioning = conditioning.describe();
  double constant = 0.0;
  std::vector<ParsedTerm> terms;
  parse_expansion(expansion, constant, terms);

  const std::size_t rounds = samples.size();
  std::vector<char> allowed(rounds, 1);
  if (conditioning.kind == Conditioning::Kind::kRestrictOffSupport) {
    const int code = basis_code(conditioning.basis);
    for (std::size_t r = 0; r < rounds; ++r)
      for (int v = 0; v < samples.n && allowed[r]; ++v)
        if (!expansion.support.contains(v) && samples.basis(r, v) != code) allowed[r] = 0;
  }
  std::vector<double> means(terms.size(), 0.0);
  std::vector<std::size_t> counts(terms.size(), 0);
  for (std::size_t g = 0; g < terms.size(); ++g) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rounds; ++r)
      if (allowed[r] && matches(samples, r, terms[g].sites)) {
        sum += product_sign(samples, r, terms[g].sites);
        ++counts[g];
      }
    if (counts[g] == 0)
      throw InsufficientCoverage("no round covers Pauli term " + terms[g].letters +
                                 (target.empty() ? "" : " of " + target));
    means[g] = sum / static_cast<double>(counts[g]);
  }
  std::vector<double> influence(rounds, 0.0);
  std::vector<char> used(rounds, 0);
  double estimate = constant;
  for (std::size_t g = 0; g < terms.size(); ++g) {
    estimate += terms[g].coeff * means[g];
    const double w = terms[g].coeff / static_cast<double>(counts[g]);
    for (std::size_t r = 0; r < rounds; ++r)
      if (allowed[r] && matches(samples, r, terms[g].sites)) {
        influence[r] += w * (product_sign(samples, r, terms[g].sites) - means[g]);
        used[r] = 1;
      }
  }
  double var = 0.0;
  for (std::size_t r = 0; r < rounds; ++r) var += influence[r] * influence[r];
  rep.estimate = estimate;
  rep.std_error = std::sqrt(var);
  rep.rounds_used = static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
  return rep;
}

EstimatorReport estimate_observable(const SampleSet& samples, const ObservableSpec& spec,
                                    const Conditioning& conditioning) {
  std::ostringstream name;
  name << to_string(spec.kind) << "{";
  for (std::size_t k = 0; k < spec.lambda.size(); ++k) name << (k ? "," : "") << spec.lambda[k];
  name << "}";
  return estimate_expansion(samples, spec.expansion, conditioning, name.str());
}

HhatEvaluator::HhatEvaluator(const PauliExpansion& expansion) {
  std::vector<ParsedTerm> terms;
  parse_expansion(expansion, constant_, terms);
  for (auto& t : terms) {
    const double weight = t.coeff * std::pow(3.0, static_cast<double>(t.sites.size()));
    terms_.push_back({std::move(t.sites), weight});
  }
  locality_ = static_cast<int>(expansion.support.size());
}

double HhatEvaluator::operator()(const SampleSet& samples, std::size_t round) const {
  double v = constant_;
  for (const auto& t : terms_)
    if (matches(samples, round, t.sites)) v += t.weight * product_sign(samples, round, t.sites);
  return v;
}

EnergyReport estimate_energy_random_basis(const SampleSet& samples,
                                          const std::vector<LocalOperator>& terms,
                                          const std::vector<std::size_t>& batch_sizes) {
  if (samples.distribution != BasisDistribution::kUniformIid)
    throw DomainError("random-basis energy estimation needs uniform iid bases");
  if (terms.empty()) throw std::invalid_argument("no Hamiltonian terms");
  std::vector<std::size_t> sizes = batch_sizes;
  if (sizes.empty()) sizes.assign(terms.size(), samples.size() / terms.size());
  if (sizes.size() != terms.size()) throw std::invalid_argument("one batch size per term");
  std::size_t need = 0;
  for (auto s : sizes) need += s;
  if (need > samples.size()) throw std::invalid_argument("batches exceed the available rounds");

  EnergyReport out;
  double var_total = 0.0;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::size_t len = sizes[k];
    if (len < 2) throw DomainError("term batch needs at least two rounds");
    HhatEvaluator eval(pauli_decompose(terms[k]));
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t r = offset; r < offset + len; ++r) {
      double v = eval(samples, r);
      sum += v;
      sum2 += v * v;
    }
    offset += len;
    EnergyTermReport t;
    t.term = static_cast<int>(k);
    t.locality = eval.locality();
    t.rounds_used = len;
    t.mean = sum / len;
    t.variance = std::max(0.0, (sum2 - len * t.mean * t.mean) / (len - 1));
    t.std_error = std::sqrt(t.variance / len);
    t.variance_bound = std::pow(2.0, 5.0 * t.locality);
    t.within_bound = t.variance <= t.variance_bound;
    out.total += t.mean;
    var_total += t.std_error * t.std_error;
    out.terms.push_back(t);
  }
  out.total_se = std::sqrt(var_total);
  return out;
}

HhatMoments exact_hhat_moments(const StateVector& psi, const LocalOperator& term) {
  PauliExpansion e = pauli_decompose(term);
  HhatEvaluator eval(e);
  const std::vector<Vertex>& sites = e.support.vertices();
  const int k = static_cast<int>(sites.size());
  // Evaluate on a one-round sample set per (pattern, outcome).
  SampleSet one;
  one.n = psi.qubits();
  one.bases.assign(one.n, 2);
  one.bits.assign(one.n, 0);
  HhatMoments m;
  double second = 0.0;
  std::size_t patterns = 1;
  for (int q = 0; q < k; ++q) patterns *= 3;
  const double w = 1.0 / static_cast<double>(patterns);
  for (std::size_t code = 0; code < patterns; ++code) {
    std::string letters(k, 'z');
    std::size_t c = code;
    for (int q = k - 1; q >= 0; --q) {
      letters[q] = kBasisLetters[c % 3];
      c /= 3;
      one.bases[sites[q]] = static_cast<std::uint8_t>(basis_code(letters[q]));
    }
    std::vector<double> probs = k ? outcome_distribution(psi, sites, letters) : std::vector<double>{1.0};
    for (std::size_t s = 0; s < probs.size(); ++s) {
      for (int q = 0; q < k; ++q) one.bits[sites[q]] = static_cast<std::uint8_t>((s >> (k - 1 - q)) & 1);
      double v = eval(one, 0);
      m.mean += w * probs[s] * v;
      second += w * probs[s] * v * v;
    }
  }
  m.variance = std::max(0.0, second - m.mean * m.mean);
  return m;
}

FidelityBound fidelity_lower_bound(double energy, double energy_error, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("gap bound delta must be positive");
  FidelityBound f;
  f.lower = std::min(1.0, 1.0 - energy / delta);
  f.conservative = std::min(1.0, 1.0 - (energy + energy_error) / delta);
  return f;
}

SamplePlan plan_samples(int locality, double delta, double epsilon, double alpha_conf, int n,
                        std::optional<double> sigma_assumed) {
  if (locality < 1 || n < 1) throw std::invalid_argument("locality and N must be positive");
  if (!(delta > 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("delta and epsilon must be positive");
  if (!(alpha_conf > 0.0 && alpha_conf < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  SamplePlan p;
  p.epsilon = epsilon;
  p.alpha_conf = alpha_conf;
  p.locality = locality;
  p.delta = delta;
  p.n = n;
  p.sigma_assumed = sigma_assumed ? *sigma_assumed : std::sqrt(std::pow(2.0, 5.0 * locality));
  if (!(p.sigma_assumed > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double lj = std::pow(2.0, 5.0 * locality + 1.0) / (delta * delta * epsilon * epsilon) *
                    std::log(1.0 / alpha_conf) / n;
  const double lt = p.sigma_assumed * p.sigma_assumed * n * n / (delta * delta);
  p.per_term = static_cast<std::size_t>(std::ceil(lj));
  p.total = static_cast<std::size_t>(std::ceil(lt));
  p.per_term_source = "per-term confidence bound 2^(5|lambda|+1)/(delta^2 eps^2) * ln(1/alpha)/N";
  p.total_source = "total estimate sigma^2 N^2 / delta^2";
  p.note = "ln(1/alpha^(1/N)) shrinks as N grows; implemented as written";
  return p;
}

double confidence_multiplier(double alpha_conf) {
  if (!(alpha_conf > 0.0 && alpha_conf < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return std::sqrt(2.0 * std::log(1.0 / alpha_conf));
}

std::size_t variance_sized_rounds(const StateVector& psi, const std::vector<LocalOperator>& terms,
                                  double delta, double epsilon, double alpha_conf) {
  if (!(delta > 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("delta and epsilon must be positive");
  double var = 0.0;
  for (const auto& t : terms) var += exact_hhat_moments(psi, t).variance;
  const double z = confidence_multiplier(alpha_conf) + 3.0;
  const double l = z * z * var / (epsilon * delta * epsilon * delta);
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(l)));
}

ConsistencyReport consistency_check(const SampleSet& samples, int i, int j, double significance,
                                    std::size_t min_count) {
  if (i == j || i < 0 || j < 0 || i >= samples.n || j >= samples.n)
    throw std::invalid_argument("consistency check needs two distinct qubits in range");
  ConsistencyReport rep;
  rep.i = i;
  rep.j = j;
  rep.significance = significance;
  std::size_t count[3][3] = {}, plus[3][3] = {};  // [basis at j][basis at i]
  for (std::size_t r = 0; r < samples.size(); ++r) {
    int bj = samples.basis(r, j), bi = samples.basis(r, i);
    ++count[bj][bi];
    if (samples.sign(r, j) > 0) ++plus[bj][bi];
  }
  double min_p = 1.0;
  for (int bj = 0; bj < 3; ++bj)
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        std::size_t na = count[bj][a], nb = count[bj][b];
        if (na < min_count || nb < min_count) continue;
        ProportionTest t;
        t.basis_i_a = a;
        t.basis_i_b = b;
        t.basis_j = bj;
        t.count_a = na;
        t.count_b = nb;
        t.freq_a = static_cast<double>(plus[bj][a]) / na;
        t.freq_b = static_cast<double>(plus[bj][b]) / nb;
        double pool = static_cast<double>(plus[bj][a] + plus[bj][b]) / (na + nb);
        double se = std::sqrt(pool * (1.0 - pool) * (1.0 / na + 1.0 / nb));
        t.z = se > 0.0 ? (t.freq_a - t.freq_b) / se : 0.0;
        t.p_value = std::erfc(std::abs(t.z) / std::sqrt(2.0));
        min_p = std::min(min_p, t.p_value);
        rep.tests.push_back(t);
      }
  if (rep.tests.empty())
    throw InsufficientCounts("consistency check (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") needs at least two bases at qubit " + std::to_string(i) +
                             " with " + std::to_string(min_count) + " rounds each");
  rep.p_value = std::min(1.0, min_p * static_cast<double>(rep.tests.size()));
  rep.pass = rep.p_value >= significance;
  return rep;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  os << "verdict: " << (accept ? "ACCEPT" : "REJECT") << "\n";
  os << "prover: " << samples.prover_tag << "  seed: " << samples.seed
     << "  rounds: " << samples.size() << "\n";
  os << "energy: " << energy.total << " +- " << energy.total_se << " (se)  conservative error "
     << energy_error << "\n";
  for (const auto& t : energy.terms)
    os << "  h[" << t.term << "] mean " << t.mean << " se " << t.std_error << " var " << t.variance
       << " (bound " << t.variance_bound << (t.within_bound ? ", ok" : ", EXCEEDED") << ")\n";
  os << "fidelity lower bound: " << fidelity.lower << "  conservative: " << fidelity.conservative
     << "\n";
  for (const auto& c : checks)
    os << "check " << c.report.target << ": " << c.report.estimate << " +- " << c.report.std_error
       << " expected " << c.expected << (c.covered ? "" : " (insufficient coverage)")
       << (c.pass ? " pass" : " FAIL") << "\n";
  os << "consistency: adjusted p " << consistency_p_value << (consistency_pass ? " pass" : " FAIL")
     << "\n";
  for (const auto& r : reasons) os << "reason: " << r << "\n";
  return os.str();
}

VerificationReport run_verification(const ParentHamiltonian& ph, const StateVector& psi,
                                    const ProverSpec& prover, const VerificationConfig& cfg) {
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("verification needs a positive gap bound");
  const std::size_t per_term = cfg.rounds_per_term ? cfg.rounds_per_term : cfg.plan.per_term;
  if (per_term < 2) throw std::invalid_argument("verification needs at least two rounds per term");
  std::vector<LocalOperator> terms = ph.operators();
  VerificationReport rep;
  rep.samples = sample(psi, prover, BasisPlan{}, per_term * terms.size(), cfg.seed, cfg.workers);
  rep.energy = estimate_energy_random_basis(rep.samples, terms);
  rep.energy_error = confidence_multiplier(cfg.plan.alpha_conf) * rep.energy.total_se;
  rep.fidelity = fidelity_lower_bound(rep.energy.total, rep.energy_error, cfg.delta);
  bool ok = true;
  if (rep.fidelity.conservative < 1.0 - cfg.plan.epsilon) {
    ok = false;
    rep.reasons.push_back("conservative fidelity bound " + std::to_string(rep.fidelity.conservative) +
                          " below " + std::to_string(1.0 - cfg.plan.epsilon));
  }
  for (const auto& spec : cfg.menu) {
    MenuCheck c;
    c.expected = spec.expected;
    try {
      c.report = estimate_observable(rep.samples, spec);
      c.pass = std::abs(c.report.estimate - spec.expected) <= 5.0 * c.report.std_error + 1e-12;
    } catch (const InsufficientCoverage& e) {
      c.covered = false;
      c.pass = false;
      c.report.target = e.what();
    }
    if (!c.pass) {
      ok = false;
      rep.reasons.push_back("observable check failed: " + c.report.target);
    }
    rep.checks.push_back(std::move(c));
  }
  std::vector<std::pair<int, int>> pairs = cfg.consistency_pairs;
  if (pairs.empty())
    for (int i = 0; i < ph.n(); ++i)
      for (int j = 0; j < ph.n(); ++j)
        if (i != j) pairs.emplace_back(i, j);
  for (auto [i, j] : pairs) {
    try {
      ConsistencyReport c = consistency_check(rep.samples, i, j, cfg.significance);
      rep.consistency_p_value =
          std::min(rep.consistency_p_value, std::min(1.0, c.p_value * static_cast<double>(pairs.size())));
      rep.consistency.push_back(std::move(c));
    } catch (const InsufficientCounts& e) {
      rep.consistency_pass = false;
      rep.reasons.push_back(e.what());
    }
  }
  if (rep.consistency_p_value < cfg.significance) {
    rep.consistency_pass = false;
    rep.reasons.push_back("consistency check failed (adjusted p " +
                          std::to_string(rep.consistency_p_value) + ")");
  }
  for (auto& c : rep.consistency) c.pass = c.p_value * static_cast<double>(pairs.size()) >= cfg.significance;
  rep.accept = ok && rep.consistency_pass;
  return rep;
}

VerificationReport run_verification(const ModelSpec& model, const ProverSpec& prover,
                                    const VerificationConfig& config) {
  ParentHamiltonian ph = build_parent_hamiltonian(model);
  StateVector psi = build_state(model);
  return run_verification(ph, psi, prover, config);
}

}  // namespace tnsprep
