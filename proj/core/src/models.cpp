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

#include "tnsprep/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace tnsprep {

ModelSpec ModelSpec::with_beta(double b) const {
  ModelSpec m = *this;
  m.beta = b;
  return m;
}

bool ModelSpec::all_zero_product() const {
  for (const auto& phi : product_state)
    if (std::abs(phi[1]) > 1e-12) return false;
  return true;
}

std::string ModelReport::describe() const {
  std::ostringstream os;
  for (const auto& v : k1.violations) os << "K1: " << v.describe() << "\n";
  for (const auto& v : k2.violations) os << "K2: " << v.describe() << "\n";
  for (const auto& e : errors) os << e << "\n";
  return os.str();
}

ModelReport validate_model(const ModelSpec& model) {
  ModelReport r;
  r.k1 = validate_family(model.k1, model.graph);
  r.k2 = validate_family(model.k2, model.graph);
  if (!(model.beta >= 0.0)) r.errors.push_back("beta must be non-negative");
  if (!(model.t >= 0.0)) r.errors.push_back("t must be non-negative");
  if (static_cast<int>(model.product_state.size()) != model.n()) {
    r.errors.push_back("product state has " + std::to_string(model.product_state.size()) +
                       " sites, graph has " + std::to_string(model.n()));
  } else {
    for (int j = 0; j < model.n(); ++j) {
      double nrm = std::norm(model.product_state[j][0]) + std::norm(model.product_state[j][1]);
      if (std::abs(std::sqrt(nrm) - 1.0) > 1e-12)
        r.errors.push_back("product state at site " + std::to_string(j) + " is not normalized");
    }
  }
  return r;
}

void require_valid(const ModelSpec& model) {
  auto r = validate_model(model);
  if (!r.accepted()) throw DomainError("invalid model:\n" + r.describe());
}

QubitState ket0() { return {cplx(1, 0), cplx(0, 0)}; }
QubitState ket_plus() { return {cplx(M_SQRT1_2, 0), cplx(M_SQRT1_2, 0)}; }

ModelSpec build_cluster_model(const Graph& g) {
  ModelSpec m(g);
  m.name = "cluster";
  for (auto [a, b] : g.edges()) m.k2.terms.push_back(named::projector11(a, b));
  m.k2.declared_radius = g.edges().empty() ? 0 : 1;
  m.t = std::numbers::pi;
  m.product_state.assign(g.vertex_count(), ket_plus());
  return m;
}

ModelSpec build_gibbs_ising_model(const Graph& g, int coupling_sign, double beta) {
  if (coupling_sign != 1 && coupling_sign != -1)
    throw std::invalid_argument("coupling sign must be +1 or -1");
  ModelSpec m(g);
  m.name = coupling_sign > 0 ? "gibbs-ising-afm" : "gibbs-ising-fm";
  for (auto [a, b] : g.edges()) {
    CMatrix k = CMatrix::Zero(4, 4);
    // diag((1 - s), (1 + s), (1 + s), (1 - s)) / 2
    k(0, 0) = k(3, 3) = (1.0 - coupling_sign) / 2.0;
    k(1, 1) = k(2, 2) = (1.0 + coupling_sign) / 2.0;
    m.k1.terms.emplace_back(Region{a, b}, k);
  }
  m.k1.declared_radius = g.edges().empty() ? 0 : 1;
  m.beta = beta;
  m.product_state.assign(g.vertex_count(), ket_plus());
  return m;
}

namespace {

void check_q(const CMatrix& q, std::size_t idx) {
  if (q.rows() != 4 || q.cols() != 4)
    throw std::invalid_argument("Q_" + std::to_string(idx) + " must act on two qubits");
  if (linalg::hermiticity_residual(q) > kHermiticityTol)
    throw std::invalid_argument("Q_" + std::to_string(idx) + " is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(q, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw std::invalid_argument("Q_" + std::to_string(idx) + " is not positive invertible");
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("Q_" + std::to_string(idx) + " is not contractive");
}

// log(Q / q_min): PSD, and exp(beta * it / beta) is Q up to the scalar 1/q_min.
CMatrix log_ratio(const CMatrix& q) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(q);
  RVector l = (es.eigenvalues().array() / es.eigenvalues().minCoeff()).log();
  return es.eigenvectors() * l.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double injective_mps_min_beta(const std::vector<CMatrix>& q_list) {
  double b = 0.0;
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    check_q(q_list[i], i);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(q_list[i], Eigen::EigenvaluesOnly);
    b = std::max(b, std::log(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff()));
  }
  return b;
}

ModelSpec build_injective_mps_model(int sites, const std::vector<CMatrix>& q_list,
                                    std::optional<double> beta) {
  if (sites < 1) throw std::invalid_argument("MPS needs at least one site");
  if (static_cast<int>(q_list.size()) != sites)
    throw std::invalid_argument("one Q per site required");
  double min_beta = injective_mps_min_beta(q_list);
  double b = beta.value_or(min_beta);
  if (b < min_beta - 1e-12)
    throw std::invalid_argument("beta " + std::to_string(b) +
                                " below minimal admissible value " + std::to_string(min_beta));
  ModelSpec m(lattices::path(2 * sites));
  m.name = "injective-mps";
  const cplx i(0, 1);
  CMatrix k2 = CMatrix::Zero(4, 4);
  // (|00><00| + |11><11| - i|11><00| + i|00><11|) / 2
  k2(0, 0) = k2(3, 3) = 0.5;
  k2(3, 0) = -0.5 * i;
  k2(0, 3) = 0.5 * i;
  for (int n = 0; n + 1 < sites; ++n) m.k2.terms.emplace_back(Region{2 * n + 1, 2 * n + 2}, k2);
  m.k2.declared_radius = sites > 1 ? 1 : 0;
  m.t = std::numbers::pi / 2;
  if (b > 0.0) {
    for (int n = 0; n < sites; ++n) {
      LocalOperator k(Region{2 * n, 2 * n + 1}, log_ratio(q_list[n]) / b);
      if (!k.support().empty()) m.k1.terms.push_back(k);
    }
    m.k1.declared_radius = 1;
  }
  m.beta = b;
  m.product_state.assign(2 * sites, ket0());
  return m;
}

BondBound bond_dimension_bound(int z, int r1, int r2, int d) {
  if (z < 1 || r1 < 0 || r2 < 0 || d < 2)
    throw std::invalid_argument("bond_dimension_bound: need z >= 1, r >= 0, d >= 2");
  BondBound out{};
  if (z != 2) {
    double zz = z;
    out.neighbor_count = zz * (1.0 - std::pow(zz - 1.0, 2.0 * r1)) / (2.0 - zz);
  } else {
    double sum = 0.0;
    for (int i = 1; i <= 2 * r1 - 1; ++i) sum += 1.0;  // (z - 1)^i = 1
    out.neighbor_count = 2.0 * sum;
  }
  double exponent = std::pow(static_cast<double>(z), 2.0 * (r1 + r2));
  out.log10_bond_bound = exponent * std::log10(static_cast<double>(d));
  out.bond_bound = out.log10_bond_bound < 308 ? std::pow(static_cast<double>(d), exponent)
                                              : std::numeric_limits<double>::infinity();
  return out;
}

namespace fixtures {

ModelSpec chain4(double beta) {
  ModelSpec m = build_cluster_model(lattices::path(4));
  for (auto [a, b] : m.graph.edges()) m.k1.terms.push_back(named::ising_edge(a, b));
  m.k1.declared_radius = 1;
  m.beta = beta;
  m.name = "FX-CHAIN4";
  return m;
}

ModelSpec chain4_zero(double beta) {
  ModelSpec m = chain4(beta);
  m.product_state.assign(4, ket0());
  m.name = "FX-CHAIN4-Z";
  return m;
}

ModelSpec gibbs4(double beta) {
  ModelSpec m = build_gibbs_ising_model(lattices::grid(2, 2, false), -1, beta);
  m.name = "FX-GIBBS4";
  return m;
}

ModelSpec gibbs4_zero(double beta) {
  ModelSpec m = gibbs4(beta);
  m.product_state.assign(4, ket0());
  m.name = "FX-GIBBS4-Z";
  return m;
}

ModelSpec gibbs_path_zero(int n, double beta) {
  ModelSpec m = build_gibbs_ising_model(lattices::path(n), -1, beta);
  m.product_state.assign(n, ket0());
  m.name = "FX-GIBBS-PATH-Z(" + std::to_string(n) + ")";
  return m;
}

ModelSpec product(int n) {
  ModelSpec m(lattices::path(n));
  m.product_state.assign(n, ket0());
  m.name = "FX-PROD(" + std::to_string(n) + ")";
  return m;
}

ModelSpec xchain(int n, double beta) {
  ModelSpec m(lattices::path(n));
  for (auto [a, b] : m.graph.edges()) {
    m.k2.terms.push_back(named::plus_projector2(a, b));
    m.k1.terms.push_back(named::ising_edge(a, b));
  }
  m.k1.declared_radius = m.k2.declared_radius = n > 1 ? 1 : 0;
  m.t = std::numbers::pi;
  m.beta = beta;
  m.product_state.assign(n, ket0());
  m.name = "FX-XCHAIN(" + std::to_string(n) + ")";
  return m;
}

ModelSpec by_name(const std::string& name, double beta) {
  static const std::regex sized(R"(^(FX-[A-Z0-9-]+?)(?:\((\d+)\)|:(\d+))$)");
  std::smatch mt;
  if (std::regex_match(name, mt, sized)) {
    std::string base = mt[1];
    int n = std::stoi(mt[2].matched ? mt[2].str() : mt[3].str());
    if (n < 1 || n > 14) throw std::invalid_argument("fixture size out of range: " + name);
    if (base == "FX-PROD") {
      if (beta != 0.0) throw std::invalid_argument("FX-PROD has no beta dependence");
      return product(n);
    }
    if (base == "FX-XCHAIN") return xchain(n, beta);
    if (base == "FX-GIBBS-PATH-Z") return gibbs_path_zero(n, beta);
  }
  if (name == "FX-CHAIN4") return chain4(beta);
  if (name == "FX-CHAIN4-Z") return chain4_zero(beta);
  if (name == "FX-GIBBS4") return gibbs4(beta);
  if (name == "FX-GIBBS4-Z") return gibbs4_zero(beta);
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::string> names() {
  return {"FX-CHAIN4",   "FX-CHAIN4-Z",   "FX-GIBBS4",        "FX-GIBBS4-Z",
          "FX-PROD(n)",  "FX-XCHAIN(n)",  "FX-GIBBS-PATH-Z(n)"};
}

}  // namespace fixtures
}  // namespace tnsprep
