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

#include "tnsprep/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace tnsprep {

std::string to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::kIdentity: return "identity";
    case ObservableKind::kZplus: return "zplus";
    case ObservableKind::kZminus: return "zminus";
    case ObservableKind::kQlambda: return "qlambda";
    case ObservableKind::kQj1: return "qj1";
    case ObservableKind::kQj2: return "qj2";
    case ObservableKind::kQj3: return "qj3";
  }
  return "?";
}

namespace {

void require_zero_sites(const ModelSpec& model, const Region& lambda) {
  if (lambda.empty()) throw std::invalid_argument("observable region must be nonempty");
  for (Vertex v : lambda) {
    model.graph.check_vertex(v);
    const auto& phi = model.product_state.at(v);
    if (std::abs(phi[1]) > 1e-12 || std::abs(std::abs(phi[0]) - 1.0) > 1e-12)
      throw DomainError("site " + std::to_string(v) +
                        " is not prepared in |0>; observables need |0> on the region");
  }
}

ObservableSpec finish(ObservableKind kind, const Region& lambda, const LocalMatrix& m,
                      double expected) {
  ObservableSpec s;
  s.kind = kind;
  s.lambda = lambda;
  s.op = hermitize(m);
  s.expected = expected;
  s.expansion = pauli_decompose(s.op);
  return s;
}

}  // namespace

LocalMatrix build_O_lambda(const ModelSpec& model, const Region& lambda) {
  require_zero_sites(model, lambda);
  return build_O(model, mu_nu_sets(model, lambda), lambda);
}

LocalMatrix build_O_lambda_inverse(const ModelSpec& model, const Region& lambda) {
  require_zero_sites(model, lambda);
  MuNu sets = mu_nu_sets(model, lambda);
  Region region = lambda;
  for (int n : sets.mu) region = region.unite(model.k2.terms.at(n).support());
  for (int m : sets.nu) region = region.unite(model.k1.terms.at(m).support());
  CMatrix o = LocalMatrix::identity(region).matrix;
  if (model.beta != 0.0)
    for (int m : sets.nu) o = o * herm_exp(model.k1.terms[m], cplx(model.beta, 0)).on(region);
  if (model.t != 0.0)
    for (int n : sets.mu) o = o * herm_exp(model.k2.terms[n], cplx(0, model.t)).on(region);
  return {region, o};
}

double projection_residual(const ModelSpec& model, const Region& lambda, const StateVector& psi) {
  LocalMatrix o = build_O_lambda(model, lambda);
  CVector v = psi.amplitudes;
  apply_local(o, v, model.n());
  CVector projected = v;
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  for (Vertex j : lambda) apply_local(LocalMatrix(Region{j}, p0), projected, model.n());
  return (v - projected).norm();
}

std::pair<ObservableSpec, ObservableSpec> build_Z_pm(const ModelSpec& model,
                                                     const Region& lambda) {
  LocalMatrix o = build_O_lambda(model, lambda);
  LocalMatrix inv = build_O_lambda_inverse(model, lambda);
  LocalMatrix z(lambda, pauli_string_matrix(std::string(lambda.size(), 'Z')));
  LocalMatrix zl = inv * z * o;
  LocalMatrix plus(zl.support, 0.5 * (zl.matrix + zl.matrix.adjoint()));
  LocalMatrix minus(zl.support, (zl.matrix - zl.matrix.adjoint()) / cplx(0, 2));
  return {finish(ObservableKind::kZplus, lambda, plus, 1.0),
          finish(ObservableKind::kZminus, lambda, minus, 0.0)};
}

double vanishing_element(const LocalOperator& p, const Region& lambda) {
  double best = std::numeric_limits<double>::infinity();
  const CMatrix& m = p.matrix();
  const int s = p.qubits();
  for (Vertex j : lambda) {
    int k = p.support().position(j);
    if (k < 0) {
      best = std::min(best, linalg::max_abs(m));
      continue;
    }
    const Eigen::Index bit = Eigen::Index{1} << (s - 1 - k);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r & bit) continue;
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (!(c & bit)) worst = std::max(worst, std::abs(m(r, c)));
    }
    best = std::min(best, worst);
  }
  return best;
}

ObservableSpec build_Q_lambda(const ModelSpec& model, const Region& lambda,
                              const LocalOperator& p) {
  if (!p.support().is_subset_of(lambda))
    throw std::invalid_argument("P must be supported inside lambda");
  double v = vanishing_element(p, lambda);
  if (v > 1e-12)
    throw DomainError("no site of lambda has <0|P|0>_j = 0 (smallest " + std::to_string(v) + ")");
  LocalMatrix o = build_O_lambda(model, lambda);
  ObservableSpec s = finish(ObservableKind::kQlambda, lambda, o.adjoint() * p.as_matrix() * o, 0.0);
  s.p = p;
  return s;
}

ObservableSpec build_Q_j(const ModelSpec& model, Vertex j, const LocalOperator& p_prime,
                         int variant) {
  if (p_prime.support().contains(j))
    throw std::invalid_argument("P' overlaps site " + std::to_string(j));
  require_zero_sites(model, Region{j});
  CMatrix a;
  ObservableKind kind;
  switch (variant) {
    case 1: a = pauli('X'); kind = ObservableKind::kQj1; break;
    case 2: a = pauli('Y'); kind = ObservableKind::kQj2; break;
    case 3: a = CMatrix::Identity(2, 2) - pauli('Z'); kind = ObservableKind::kQj3; break;
    default: throw std::invalid_argument("Q_j variant must be 1, 2 or 3");
  }
  LocalMatrix o = build_O_j(model, j);
  LocalMatrix inner = LocalMatrix(Region{j}, a) * p_prime.as_matrix();
  ObservableSpec s = finish(kind, Region{j}.unite(p_prime.support()), o.adjoint() * inner * o, 0.0);
  s.p = p_prime;
  return s;
}

ObservableSpec complete_map(const ModelSpec& model, const std::string& letters) {
  if (static_cast<int>(letters.size()) != model.n())
    throw std::invalid_argument("Pauli string length must equal the register size");
  std::vector<Vertex> sites;
  std::string sub;
  bool all_z = true;
  for (int v = 0; v < model.n(); ++v) {
    char c = letters[v];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
    if (c == 'I') continue;
    sites.push_back(v);
    sub.push_back(c);
    if (c != 'Z') all_z = false;
  }
  if (sites.empty()) {
    CMatrix one = CMatrix::Identity(1, 1);
    return finish(ObservableKind::kIdentity, Region{}, LocalMatrix(Region{}, one), 1.0);
  }
  Region lambda(sites);
  if (all_z) return build_Z_pm(model, lambda).first;
  return build_Q_lambda(model, lambda, pauli_operator(lambda, sub));
}

namespace {

CMatrix frame_unitary(const ZeroFrame& frame, const Region& support) {
  CMatrix u = CMatrix::Identity(1, 1);
  for (Vertex v : support) u = linalg::kron(u, frame.w.at(v));
  return u;
}

CommutingFamily rotate_family(const CommutingFamily& f, const ZeroFrame& frame) {
  CommutingFamily out;
  out.declared_radius = f.declared_radius;
  for (const auto& k : f.terms) {
    CMatrix u = frame_unitary(frame, k.support());
    out.terms.emplace_back(k.support(), linalg::hermitian_part(u.adjoint() * k.matrix() * u));
  }
  return out;
}

LocalOperator rotate_back(const LocalOperator& op, const ZeroFrame& frame) {
  CMatrix u = frame_unitary(frame, op.support());
  return LocalOperator(op.support(), linalg::hermitian_part(u * op.matrix() * u.adjoint()));
}

}  // namespace

ZeroFrame zero_frame(const ModelSpec& model) {
  ZeroFrame f(model);
  for (const auto& phi : model.product_state) {
    double norm = std::sqrt(std::norm(phi[0]) + std::norm(phi[1]));
    if (std::abs(norm - 1.0) > 1e-12) throw DomainError("product state is not normalized");
    CMatrix w(2, 2);
    w << phi[0], -std::conj(phi[1]), phi[1], std::conj(phi[0]);
    f.w.push_back(w);
  }
  f.rotated.k1 = rotate_family(model.k1, f);
  f.rotated.k2 = rotate_family(model.k2, f);
  f.rotated.product_state.assign(model.n(), ket0());
  f.rotated.name = model.name + "@zero-frame";
  return f;
}

ObservableSpec to_model_frame(const ObservableSpec& spec, const ZeroFrame& frame) {
  ObservableSpec out = spec;
  out.op = rotate_back(spec.op, frame);
  if (spec.p) out.p = rotate_back(*spec.p, frame);
  out.expansion = pauli_decompose(out.op);
  return out;
}

std::vector<std::string> pauli_strings(int n) {
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::size_t total = std::size_t{1} << (2 * n);
  std::vector<std::string> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::string s(n, 'I');
    for (int p = 0; p < n; ++p) s[p] = kLetters[(code >> (2 * (n - 1 - p))) & 3];
    out.push_back(std::move(s));
  }
  return out;
}

GramReport completeness_gram(const ModelSpec& model, int max_qubits, int workers) {
  const int n = model.n();
  if (n > max_qubits)
    throw BudgetExceeded("Gram budget exceeded: N=" + std::to_string(n) + " > " +
                         std::to_string(max_qubits));
  std::vector<Vertex> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  require_zero_sites(model, Region(all));
  GramReport r;
  r.order = pauli_strings(n);
  const Eigen::Index dim = static_cast<Eigen::Index>(r.order.size());
  r.dimension = static_cast<int>(dim);
  const Eigen::Index side = Eigen::Index{1} << n;
  CMatrix columns(side * side, dim);
  auto fill = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index k = begin; k < end; ++k) {
      ObservableSpec s = complete_map(model, r.order[k]);
      CMatrix g = global_matrix(s.op.as_matrix(), n);
      columns.col(k) = Eigen::Map<const CVector>(g.data(), g.size());
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    fill(0, dim);
  } else {
    std::vector<std::thread> pool;
    Eigen::Index chunk = (dim + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      Eigen::Index b = w * chunk, e = std::min(dim, b + chunk);
      if (b < e) pool.emplace_back(fill, b, e);
    }
    for (auto& t : pool) t.join();
  }
  r.b = columns.adjoint() * columns / static_cast<double>(side);
  Eigen::JacobiSVD<CMatrix> svd(r.b);
  const auto& sv = svd.singularValues();
  r.sigma_max = sv(0);
  r.sigma_min = sv(sv.size() - 1);
  r.condition = r.sigma_min > 0 ? r.sigma_max / r.sigma_min : std::numeric_limits<double>::infinity();
  r.nonsingular = r.sigma_min > 1e-8;
  return r;
}

}  // namespace tnsprep
