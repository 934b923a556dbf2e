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

#include "tnsprep/operators.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace tnsprep {

namespace {

using Index = std::uint64_t;

// Bit position (within an index over `outer`) of each vertex of `inner`,
// listed in inner order.
std::vector<int> bit_positions(const Region& inner, const Region& outer) {
  std::vector<int> bits;
  bits.reserve(inner.size());
  const int k = static_cast<int>(outer.size());
  for (Vertex v : inner) {
    int p = outer.position(v);
    if (p < 0) throw std::invalid_argument("support is not a subset of the target region");
    bits.push_back(k - 1 - p);
  }
  return bits;
}

// deposit[s] scatters the bits of s (s over `bits.size()` qubits, first
// qubit most significant) into the outer index positions.
std::vector<Index> deposit_table(const std::vector<int>& bits) {
  const int k = static_cast<int>(bits.size());
  std::vector<Index> table(Index{1} << k, 0);
  for (Index s = 0; s < table.size(); ++s) {
    Index out = 0;
    for (int i = 0; i < k; ++i)
      if ((s >> (k - 1 - i)) & 1) out |= Index{1} << bits[i];
    table[s] = out;
  }
  return table;
}

Index mask_of(const std::vector<int>& bits) {
  Index m = 0;
  for (int b : bits) m |= Index{1} << b;
  return m;
}

void check_square(const Region& s, const CMatrix& m) {
  const Index dim = Index{1} << s.size();
  if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim))
    throw std::invalid_argument("matrix dimension " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " does not match support size " +
                                std::to_string(s.size()));
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

LocalMatrix::LocalMatrix(Region s, CMatrix m) : support(std::move(s)), matrix(std::move(m)) {
  check_square(support, matrix);
}

LocalMatrix LocalMatrix::identity(const Region& s) {
  const Eigen::Index dim = Eigen::Index{1} << s.size();
  return {s, CMatrix::Identity(dim, dim)};
}

LocalMatrix LocalMatrix::operator*(const LocalMatrix& other) const {
  Region u = support.unite(other.support);
  return {u, on(u) * other.on(u)};
}

CMatrix LocalMatrix::on(const Region& target) const {
  return embed_matrix(support, matrix, target);
}

LocalOperator::LocalOperator(Region support, CMatrix matrix)
    : support_(std::move(support)), matrix_(std::move(matrix)) {
  check_square(support_, matrix_);
  double res = linalg::hermiticity_residual(matrix_);
  if (res > kHermiticityTol)
    throw std::invalid_argument("operator is not Hermitian (residual " + std::to_string(res) + ")");
  matrix_ = linalg::hermitian_part(matrix_);
  bool changed = true;
  while (changed && !support_.empty()) {
    changed = false;
    for (Vertex q : support_) {
      Region single{q};
      Region rest = support_.minus(single);
      CMatrix reduced = partial_trace(support_, matrix_, single) / 2.0;
      CMatrix back = embed_matrix(rest, reduced, support_);
      if (linalg::max_abs(back - matrix_) <= kSupportTol) {
        support_ = rest;
        matrix_ = reduced;
        changed = true;
        break;
      }
    }
  }
}

CMatrix LocalOperator::on(const Region& target) const {
  return embed_matrix(support_, matrix_, target);
}

CMatrix embed_matrix(const Region& from, const CMatrix& m, const Region& to) {
  check_square(from, m);
  auto bits = bit_positions(from, to);
  auto dep = deposit_table(bits);
  const Index mask = mask_of(bits);
  const Index dim = Index{1} << to.size();
  const Index sub = dep.size();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Index rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (Index r = 0; r < sub; ++r)
      for (Index c = 0; c < sub; ++c) out(rest | dep[r], rest | dep[c]) = m(r, c);
  }
  return out;
}

LocalOperator embed(const LocalOperator& op, const Region& target) {
  if (!op.support().is_subset_of(target))
    throw std::invalid_argument("embed: support is not a subset of the target");
  return LocalOperator(target, op.on(target));
}

CMatrix global_matrix(const LocalMatrix& m, int n) {
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return m.on(Region(all));
}

void apply_local(const LocalMatrix& m, CVector& state, int n) {
  if (state.size() != (Eigen::Index{1} << n))
    throw std::invalid_argument("statevector dimension does not match qubit count");
  std::vector<int> bits;
  for (Vertex v : m.support) {
    if (v < 0 || v >= n) throw std::invalid_argument("operator support outside the register");
    bits.push_back(n - 1 - v);
  }
  if (bits.empty()) {
    state *= m.matrix(0, 0);
    return;
  }
  auto dep = deposit_table(bits);
  const Index mask = mask_of(bits);
  const Index dim = Index{1} << n;
  const Eigen::Index sub = static_cast<Eigen::Index>(dep.size());
  CVector tmp(sub);
  for (Index base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index s = 0; s < sub; ++s) tmp(s) = state(base | dep[s]);
    CVector out = m.matrix * tmp;
    for (Eigen::Index s = 0; s < sub; ++s) state(base | dep[s]) = out(s);
  }
}

CMatrix partial_trace(const Region& support, const CMatrix& m, const Region& traced) {
  check_square(support, m);
  if (!traced.is_subset_of(support))
    throw std::invalid_argument("partial_trace: traced qubits not in support");
  Region kept = support.minus(traced);
  auto dk = deposit_table(bit_positions(kept, support));
  auto dt = deposit_table(bit_positions(traced, support));
  const Eigen::Index dim = static_cast<Eigen::Index>(dk.size());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      cplx acc = 0;
      for (Index t : dt) acc += m(dk[r] | t, dk[c] | t);
      out(r, c) = acc;
    }
  return out;
}

LocalOperator hermitize(const LocalMatrix& m, double tol) {
  double scale = std::max(1.0, linalg::max_abs(m.matrix));
  double res = linalg::hermiticity_residual(m.matrix);
  if (res > tol * scale)
    throw std::invalid_argument("hermitize: matrix is far from Hermitian (residual " +
                                std::to_string(res) + ")");
  return LocalOperator(m.support, linalg::hermitian_part(m.matrix));
}

LocalMatrix herm_exp(const LocalOperator& op, cplx s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix());
  CVector d = (s * es.eigenvalues().cast<cplx>()).array().exp();
  CMatrix v = es.eigenvectors();
  return {op.support(), v * d.asDiagonal() * v.adjoint()};
}

double commutator_residual(const LocalMatrix& a, const LocalMatrix& b) {
  Region u = a.support.unite(b.support);
  CMatrix am = a.on(u);
  CMatrix bm = b.on(u);
  return spectral_norm(am * bm - bm * am);
}

std::string FamilyViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNonCommuting: os << "non-commuting"; break;
    case Kind::kNotPsd: os << "not positive semidefinite"; break;
    case Kind::kNormExceeded: os << "norm exceeds 1"; break;
    case Kind::kRadiusExceeded: os << "radius exceeds declared radius"; break;
    case Kind::kBadVertex: os << "support vertex outside graph"; break;
  }
  os << " terms [";
  for (std::size_t i = 0; i < terms.size(); ++i) os << (i ? "," : "") << terms[i];
  os << "] residual " << residual;
  return os.str();
}

FamilyReport validate_family(const CommutingFamily& family, const Graph& graph) {
  FamilyReport report;
  using K = FamilyViolation::Kind;
  const int m = static_cast<int>(family.terms.size());
  std::vector<bool> usable(m, true);
  for (int i = 0; i < m; ++i) {
    const auto& op = family.terms[i];
    bool bad_vertex = false;
    for (Vertex v : op.support())
      if (v < 0 || v >= graph.vertex_count()) bad_vertex = true;
    if (bad_vertex) {
      report.violations.push_back({K::kBadVertex, {i}, 0.0});
      usable[i] = false;
      continue;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    if (lo < -kFamilyTol) report.violations.push_back({K::kNotPsd, {i}, lo});
    if (hi > 1.0 + kFamilyTol) report.violations.push_back({K::kNormExceeded, {i}, hi});
    if (!op.support().empty()) {
      int r = -1;
      try {
        r = radius(graph, op.support());
      } catch (const std::invalid_argument&) {
        r = graph.vertex_count();
      }
      if (r > family.declared_radius)
        report.violations.push_back({K::kRadiusExceeded, {i}, static_cast<double>(r)});
    }
  }
  for (int i = 0; i < m; ++i) {
    if (!usable[i]) continue;
    for (int j = i + 1; j < m; ++j) {
      if (!usable[j]) continue;
      if (!family.terms[i].support().intersects(family.terms[j].support())) continue;
      double res = commutator_residual(family.terms[i].as_matrix(), family.terms[j].as_matrix());
      if (res > kFamilyTol) report.violations.push_back({K::kNonCommuting, {i, j}, res});
    }
  }
  return report;
}

CMatrix pauli(char letter) {
  CMatrix p(2, 2);
  const cplx i(0, 1);
  switch (letter) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -i, i, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
  return p;
}

CMatrix pauli_string_matrix(const std::string& letters) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (char c : letters) m = linalg::kron(m, pauli(c));
  return m;
}

LocalOperator pauli_operator(const Region& support, const std::string& letters) {
  if (letters.size() != support.size())
    throw std::invalid_argument("Pauli string length does not match support size");
  return LocalOperator(support, pauli_string_matrix(letters));
}

CMatrix PauliExpansion::reconstruct() const {
  const Eigen::Index dim = Eigen::Index{1} << support.size();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [letters, coeff] : terms) m += coeff * pauli_string_matrix(letters);
  return m;
}

PauliExpansion pauli_decompose(const LocalOperator& op) {
  PauliExpansion out;
  out.support = op.support();
  const int k = op.qubits();
  const Index dim = Index{1} << k;
  const CMatrix& m = op.matrix();
  static const cplx kMinusIPow[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
  // sigma[c, c^x] = (-i)^{#Y} (-1)^{popcount(c & z)}, so
  // tr(M sigma) = sum_c M[c^x, c] sigma[c, c^x].
  for (Index x = 0; x < dim; ++x) {
    for (Index z = 0; z < dim; ++z) {
      int ny = std::popcount(x & z);
      cplx acc = 0;
      for (Index c = 0; c < dim; ++c) {
        cplx v = m(c ^ x, c);
        acc += (std::popcount(c & z) & 1) ? -v : v;
      }
      acc *= kMinusIPow[ny & 3];
      double coeff = acc.real() / static_cast<double>(dim);
      if (std::abs(coeff) <= 1e-14) continue;
      std::string letters(k, 'I');
      for (int q = 0; q < k; ++q) {
        int bit = k - 1 - q;
        bool xb = (x >> bit) & 1;
        bool zb = (z >> bit) & 1;
        letters[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
      }
      out.terms.emplace(std::move(letters), coeff);
    }
  }
  return out;
}

CommutingFamily conjugated_family(const Graph& graph, const std::vector<LocalMatrix>& unitaries,
                                  const std::vector<LocalOperator>& seeds) {
  for (std::size_t a = 0; a < unitaries.size(); ++a) {
    const auto& u = unitaries[a].matrix;
    double res = linalg::max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
    if (res > kFamilyTol)
      throw std::invalid_argument("unitary " + std::to_string(a) + " is not unitary");
    for (std::size_t b = a + 1; b < unitaries.size(); ++b) {
      if (!unitaries[a].support.intersects(unitaries[b].support)) continue;
      if (commutator_residual(unitaries[a], unitaries[b]) > kFamilyTol)
        throw std::invalid_argument("unitaries " + std::to_string(a) + " and " +
                                    std::to_string(b) + " do not commute");
    }
  }
  for (std::size_t n = 0; n < seeds.size(); ++n) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(seeds[n].matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kFamilyTol ||
        es.eigenvalues().maxCoeff() > 1.0 + kFamilyTol)
      throw std::invalid_argument("seed " + std::to_string(n) + " spectrum outside [0, 1]");
    for (std::size_t m = n + 1; m < seeds.size(); ++m)
      if (seeds[n].support().intersects(seeds[m].support()))
        throw std::invalid_argument("seeds " + std::to_string(n) + " and " + std::to_string(m) +
                                    " overlap");
  }
  CommutingFamily family;
  for (const auto& seed : seeds) {
    LocalMatrix w = LocalMatrix::identity(seed.support());
    for (const auto& u : unitaries)
      if (u.support.intersects(seed.support())) w = w * u;
    LocalMatrix k = w * seed.as_matrix() * w.adjoint();
    family.terms.push_back(hermitize(k));
  }
  for (const auto& t : family.terms)
    if (!t.support().empty())
      family.declared_radius = std::max(family.declared_radius, radius(graph, t.support()));
  return family;
}

std::vector<LocalMatrix> toric_type_unitaries(int lx, int ly, const CMatrix& o_a,
                                              const CMatrix& o_b,
                                              const std::vector<double>& times_a,
                                              const std::vector<double>& times_b) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("toric-type construction needs a 2D grid");
  for (const CMatrix* o : {&o_a, &o_b}) {
    if (o->rows() != 2 || o->cols() != 2)
      throw std::invalid_argument("plaquette operators must be single-qubit");
    if (linalg::hermiticity_residual(*o) > kHermiticityTol)
      throw std::invalid_argument("plaquette operator is not Hermitian");
    if (spectral_norm(*o) > 1.0 + kFamilyTol)
      throw std::invalid_argument("plaquette operator norm exceeds 1");
  }
  double anti = linalg::max_abs(o_a * o_b + o_b * o_a);
  if (anti > kFamilyTol)
    throw std::invalid_argument("O_A and O_B do not anticommute (residual " +
                                std::to_string(anti) + ")");
  std::vector<LocalMatrix> out;
  std::size_t ia = 0, ib = 0;
  for (int y = 0; y + 1 < ly; ++y) {
    for (int x = 0; x + 1 < lx; ++x) {
      bool type_a = (x + y) % 2 == 0;
      const auto& times = type_a ? times_a : times_b;
      std::size_t& idx = type_a ? ia : ib;
      if (idx >= times.size())
        throw std::invalid_argument("not enough plaquette times supplied");
      double t = times[idx++];
      const CMatrix& o = type_a ? o_a : o_b;
      CMatrix h = linalg::kron(linalg::kron(o, o), linalg::kron(o, o));
      Region plaquette{y * lx + x, y * lx + x + 1, (y + 1) * lx + x, (y + 1) * lx + x + 1};
      LocalMatrix u = herm_exp(LocalOperator(plaquette, h), cplx(0, t));
      out.emplace_back(plaquette, u.on(plaquette));
    }
  }
  if (ia != times_a.size() || ib != times_b.size())
    throw std::invalid_argument("too many plaquette times supplied");
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (out[a].support.intersects(out[b].support) &&
          commutator_residual(out[a], out[b]) > kFamilyTol)
        throw DomainError("plaquette unitaries fail to commute");
  return out;
}

namespace named {

LocalOperator ising_edge(Vertex a, Vertex b) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(1, 1) = m(2, 2) = 1.0;
  return LocalOperator(Region{a, b}, m);
}

LocalOperator projector11(Vertex a, Vertex b) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(3, 3) = 1.0;
  return LocalOperator(Region{a, b}, m);
}

LocalOperator plus_projector(Vertex a) {
  CMatrix m = CMatrix::Constant(2, 2, 0.5);
  return LocalOperator(Region{a}, m);
}

LocalOperator plus_projector2(Vertex a, Vertex b) {
  CMatrix p = CMatrix::Constant(2, 2, 0.5);
  return LocalOperator(Region{a, b}, linalg::kron(p, p));
}

}  // namespace named
}  // namespace tnsprep
