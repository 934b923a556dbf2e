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

#include "tnsprep/state_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tnsprep {

namespace {

Region full_register(int n) {
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return Region(std::move(all));
}

void sorted_insert(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

int StateVector::qubits() const {
  int n = 0;
  while ((Eigen::Index{1} << n) < amplitudes.size()) ++n;
  return n;
}

MuNu mu_nu_sets(const ModelSpec& model, Vertex j) {
  model.graph.check_vertex(j);
  MuNu out;
  Region joint;
  for (int n = 0; n < static_cast<int>(model.k2.size()); ++n) {
    const auto& s = model.k2.terms[n].support();
    if (s.contains(j)) {
      out.mu.push_back(n);
      joint = joint.unite(s);
    }
  }
  for (int m = 0; m < static_cast<int>(model.k1.size()); ++m) {
    const auto& s = model.k1.terms[m].support();
    if (s.contains(j) || s.intersects(joint)) out.nu.push_back(m);
  }
  return out;
}

MuNu mu_nu_sets(const ModelSpec& model, const Region& lambda) {
  if (lambda.empty()) throw std::invalid_argument("mu_nu_sets: empty region");
  MuNu out;
  for (Vertex j : lambda) {
    MuNu s = mu_nu_sets(model, j);
    for (int n : s.mu) sorted_insert(out.mu, n);
    for (int m : s.nu) sorted_insert(out.nu, m);
  }
  return out;
}

CVector product_vector(const ModelSpec& model) {
  const int n = model.n();
  if (static_cast<int>(model.product_state.size()) != n)
    throw std::invalid_argument("product state size does not match the graph");
  CVector psi = CVector::Ones(1);
  for (int v = 0; v < n; ++v) {
    CVector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * model.product_state[v][0];
      next(2 * i + 1) = psi(i) * model.product_state[v][1];
    }
    psi = std::move(next);
  }
  return psi;
}

StateVector build_state(const ModelSpec& model, const EngineLimits& limits) {
  const int n = model.n();
  if (n > limits.max_state_qubits)
    throw BudgetExceeded("statevector budget exceeded: N=" + std::to_string(n) + " > " +
                         std::to_string(limits.max_state_qubits));
  CVector psi = product_vector(model);
  if (model.t != 0.0)
    for (const auto& k : model.k2.terms) apply_local(herm_exp(k, cplx(0, model.t)), psi, n);
  if (model.beta != 0.0)
    for (const auto& k : model.k1.terms) apply_local(herm_exp(k, cplx(model.beta, 0)), psi, n);
  StateVector out;
  out.norm_constant = psi.norm();
  out.amplitudes = psi / out.norm_constant;
  return out;
}

LocalMatrix build_O(const ModelSpec& model, const MuNu& sets, const Region& extra) {
  Region region = extra;
  for (int n : sets.mu) region = region.unite(model.k2.terms.at(n).support());
  for (int m : sets.nu) region = region.unite(model.k1.terms.at(m).support());
  CMatrix o = LocalMatrix::identity(region).matrix;
  if (model.t != 0.0)
    for (int n : sets.mu) o = o * herm_exp(model.k2.terms[n], cplx(0, -model.t)).on(region);
  if (model.beta != 0.0)
    for (int m : sets.nu) o = o * herm_exp(model.k1.terms[m], cplx(-model.beta, 0)).on(region);
  return {region, o};
}

LocalMatrix build_O_j(const ModelSpec& model, Vertex j) {
  return build_O(model, mu_nu_sets(model, j), Region{j});
}

std::vector<LocalOperator> ParentHamiltonian::operators() const {
  std::vector<LocalOperator> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.h);
  return out;
}

std::vector<Region> ParentHamiltonian::footprints() const {
  std::vector<Region> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    Region r{t.site};
    for (int n : t.mu) r = r.unite(model.k2.terms.at(n).support());
    for (int m : t.nu) r = r.unite(model.k1.terms.at(m).support());
    out.push_back(r.unite(t.h.support()));
  }
  return out;
}

ParentHamiltonian build_parent_hamiltonian(const ModelSpec& model) {
  require_valid(model);
  ParentHamiltonian ph(model);
  for (Vertex j = 0; j < model.n(); ++j) {
    MuNu sets = mu_nu_sets(model, j);
    LocalMatrix o = build_O(model, sets, Region{j});
    const auto& phi = model.product_state[j];
    CMatrix pi = CMatrix::Identity(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) pi(r, c) -= phi[r] * std::conj(phi[c]);
    LocalMatrix h = o.adjoint() * LocalMatrix(Region{j}, pi) * o;
    ph.terms.push_back({j, hermitize(h), sets.mu, sets.nu});
  }
  return ph;
}

CMatrix dense_hamiltonian(const std::vector<LocalOperator>& terms, int n,
                          const EngineLimits& limits) {
  if (n > limits.max_dense_qubits)
    throw BudgetExceeded("dense Hamiltonian budget exceeded: N=" + std::to_string(n) + " > " +
                         std::to_string(limits.max_dense_qubits));
  Region all = full_register(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const auto& t : terms) h += t.on(all);
  return h;
}

CMatrix dense_hamiltonian(const ParentHamiltonian& ph, const EngineLimits& limits) {
  return dense_hamiltonian(ph.operators(), ph.n(), limits);
}

StateVector apply_entangler(const ModelSpec& model, const StateVector& state) {
  const int n = model.n();
  if (state.amplitudes.size() != (Eigen::Index{1} << n))
    throw std::invalid_argument("apply_entangler: state dimension does not match the model");
  StateVector out = state;
  if (model.t != 0.0)
    for (const auto& k : model.k2.terms)
      apply_local(herm_exp(k, cplx(0, model.t)), out.amplitudes, n);
  return out;
}

double runtime_estimate(int n, double delta, double epsilon, double c) {
  if (!(delta > 0.0)) throw std::invalid_argument("runtime_estimate: delta must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("runtime_estimate: epsilon must lie in (0, 1)");
  if (n < 1 || !(c > 0.0)) throw std::invalid_argument("runtime_estimate: need N >= 1, C > 0");
  return c * static_cast<double>(n) * n / (delta * delta * delta * epsilon);
}

}  // namespace tnsprep
