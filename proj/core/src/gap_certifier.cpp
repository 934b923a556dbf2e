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

#include "tnsprep/gap_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tnsprep {

CertifierMode CertifierMode::parse(const std::string& text, bool projectorized) {
  CertifierMode m;
  m.projectorized = projectorized;
  if (text == "all-pairs") {
    m.sparsity = SparsityMode::kAllPairs;
  } else if (text == "overlapping-only") {
    m.sparsity = SparsityMode::kOverlappingOnly;
  } else if (text.rfind("blocked:", 0) == 0) {
    m.sparsity = SparsityMode::kBlocked;
    try {
      std::size_t used = 0;
      m.block_radius = std::stoi(text.substr(8), &used);
      if (used != text.size() - 8 || m.block_radius < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad blocked mode '" + text + "', expected blocked:<k>");
    }
  } else {
    throw std::invalid_argument("unknown mode '" + text +
                                "', expected all-pairs, overlapping-only or blocked:<k>");
  }
  return m;
}

std::string CertifierMode::name() const {
  std::string s;
  switch (sparsity) {
    case SparsityMode::kAllPairs: s = "all-pairs"; break;
    case SparsityMode::kOverlappingOnly: s = "overlapping-only"; break;
    case SparsityMode::kBlocked: s = "blocked:" + std::to_string(block_radius); break;
  }
  if (projectorized) s += "+projectorized";
  return s;
}

int GapFormulation::pair_index(int i, int j) const {
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first == i && pairs[p].second == j) return static_cast<int>(p);
  return -1;
}

double GapCertificate::a_of(int i, int j) const {
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first == i && pairs[p].second == j) return a[p];
  return 0.0;
}

double GapCertificate::c_of(int i, int j) const {
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first == i && pairs[p].second == j) return c[p];
  return 0.0;
}

CMatrix pair_block(const LocalOperator& hi, const LocalOperator& hj, double a_ij, double a_ji,
                   double c_ij, double c_ji, bool self) {
  if (self) {
    CMatrix m = hi.matrix();
    return a_ij * m * m - c_ij * m;
  }
  Region u = hi.support().unite(hj.support());
  CMatrix p = hi.on(u);
  CMatrix q = hj.on(u);
  return p * q + q * p + a_ij * p * p + a_ji * q * q - c_ij * p - c_ji * q;
}

namespace {

RMatrix rsym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

LocalOperator range_projector(const LocalOperator& h, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  double top = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  CMatrix p = CMatrix::Zero(h.matrix().rows(), h.matrix().cols());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > tol * top)
      p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  return LocalOperator(h.support(), p);
}

// Pieces of one pair constraint, each compressed onto range(h_i + h_j) and
// mapped to real symmetric form.
struct BlockParts {
  RMatrix cross, pi2, pj2, pi, pj;
};

BlockParts compressed_parts(const LocalOperator& hi, const LocalOperator& hj, bool self,
                            double tol) {
  Region u = self ? hi.support() : hi.support().unite(hj.support());
  CMatrix p = hi.on(u);
  CMatrix q = self ? CMatrix::Zero(p.rows(), p.cols()) : hj.on(u);
  CMatrix sum = p + q;
  BlockParts out;
  if (linalg::is_real(p) && linalg::is_real(q)) {
    RMatrix pr = p.real(), qr = q.real();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(rsym(pr + qr));
    double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      if (es.eigenvalues()(k) > tol * top) keep.push_back(k);
    RMatrix v(pr.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) v.col(k) = es.eigenvectors().col(keep[k]);
    auto c = [&](const RMatrix& m) { return rsym(v.transpose() * m * v); };
    out.cross = c(pr * qr + qr * pr);
    out.pi2 = c(pr * pr);
    out.pj2 = c(qr * qr);
    out.pi = c(pr);
    out.pj = c(qr);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(sum));
  double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > tol * top) keep.push_back(k);
  CMatrix v(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) v.col(k) = es.eigenvectors().col(keep[k]);
  auto c = [&](const CMatrix& m) {
    return rsym(linalg::realify(linalg::hermitian_part(v.adjoint() * m * v)));
  };
  out.cross = c(p * q + q * p);
  out.pi2 = c(p * p);
  out.pj2 = c(q * q);
  out.pi = c(p);
  out.pj = c(q);
  return out;
}

// Uncompressed complex pieces for the independent audit.
struct AuditBlock {
  CMatrix cross, pi2, pj2, pi, pj;
  int pij, pji;
  bool self;

  CMatrix at(const std::vector<double>& a, const std::vector<double>& c, double s) const {
    if (self) return a[pij] * pi2 - (c[pij] - s) * pi;
    return cross + a[pij] * pi2 + a[pji] * pj2 - (c[pij] - s) * pi - (c[pji] - s) * pj;
  }
};

std::vector<std::vector<int>> block_groups(const std::vector<LocalOperator>& terms,
                                           const Graph& graph, int k) {
  std::vector<std::vector<int>> groups(graph.vertex_count());
  std::vector<Region> balls;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) balls.push_back(ball(graph, v, k));
  std::vector<std::vector<int>> extra;
  for (int t = 0; t < static_cast<int>(terms.size()); ++t) {
    const Region& s = terms[t].support();
    int center = -1;
    for (Vertex v = 0; v < graph.vertex_count() && center < 0; ++v)
      if (s.is_subset_of(balls[v])) center = v;
    if (center >= 0) groups[center].push_back(t);
    else extra.push_back({t});
  }
  std::vector<std::vector<int>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  for (auto& g : extra) out.push_back(std::move(g));
  return out;
}

}  // namespace

GapFormulation formulate_sdp(const std::vector<LocalOperator>& raw_terms, const Graph& graph,
                             const CertifierMode& mode, const CertifierConfig& cfg) {
  GapFormulation f;
  if (raw_terms.empty()) throw std::invalid_argument("formulate_sdp: no terms");
  if (!cfg.footprints.empty() && cfg.footprints.size() != raw_terms.size())
    throw std::invalid_argument("formulate_sdp: footprint count differs from term count");
  std::vector<Region> fp;
  if (mode.sparsity == SparsityMode::kBlocked) {
    f.groups = block_groups(raw_terms, graph, mode.block_radius);
    for (const auto& g : f.groups) {
      Region u;
      for (int t : g) u = u.unite(raw_terms[t].support());
      CMatrix sum = CMatrix::Zero(Eigen::Index{1} << u.size(), Eigen::Index{1} << u.size());
      for (int t : g) sum += raw_terms[t].on(u);
      f.terms.emplace_back(u, linalg::hermitian_part(sum));
      Region g_fp = u;
      if (!cfg.footprints.empty())
        for (int t : g) g_fp = g_fp.unite(cfg.footprints[t]);
      fp.push_back(g_fp);
    }
  } else {
    f.terms = raw_terms;
    for (int t = 0; t < static_cast<int>(raw_terms.size()); ++t) {
      f.groups.push_back({t});
      fp.push_back(cfg.footprints.empty() ? raw_terms[t].support()
                                          : cfg.footprints[t].unite(raw_terms[t].support()));
    }
  }
  if (mode.projectorized)
    for (auto& t : f.terms) t = range_projector(t, cfg.compress_tol);

  const int n = static_cast<int>(f.terms.size());
  std::vector<bool> has_partner(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool keep = mode.sparsity == SparsityMode::kAllPairs ||
                  fp[i].intersects(fp[j]);
      if (!keep) continue;
      f.blocks.emplace_back(i, j);
      has_partner[i] = has_partner[j] = true;
    }
  for (int i = 0; i < n; ++i)
    if (!has_partner[i]) f.blocks.emplace_back(i, i);
  std::sort(f.blocks.begin(), f.blocks.end());
  for (auto [i, j] : f.blocks) {
    f.pairs.emplace_back(i, j);
    if (i != j) f.pairs.emplace_back(j, i);
  }

  SdpProblem& p = f.problem;
  p.var_count = 1 + 2 * static_cast<int>(f.pairs.size());
  p.objective = RVector::Zero(p.var_count);
  p.objective(0) = 1.0;
  p.eq_a = RMatrix::Zero(2 * n, p.var_count);
  p.eq_b = RVector::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    p.eq_b(i) = 1.0;
    p.eq_a(n + i, 0) = -1.0;
  }
  for (int q = 0; q < static_cast<int>(f.pairs.size()); ++q) {
    int i = f.pairs[q].first;
    p.eq_a(i, GapFormulation::a_index(q)) = 1.0;
    p.eq_a(n + i, GapFormulation::c_index(q)) = 1.0;
  }
  for (auto [i, j] : f.blocks) {
    bool self = i == j;
    BlockParts parts = compressed_parts(f.terms[i], f.terms[j], self, cfg.compress_tol);
    if (parts.pi.rows() == 0) continue;
    SdpBlock b;
    int pij = f.pair_index(i, j);
    b.f0 = self ? RMatrix::Zero(parts.pi.rows(), parts.pi.cols()) : parts.cross;
    b.coeffs.emplace_back(GapFormulation::a_index(pij), parts.pi2);
    b.coeffs.emplace_back(GapFormulation::c_index(pij), -parts.pi);
    if (!self) {
      int pji = f.pair_index(j, i);
      b.coeffs.emplace_back(GapFormulation::a_index(pji), parts.pj2);
      b.coeffs.emplace_back(GapFormulation::c_index(pji), -parts.pj);
    }
    p.blocks.push_back(std::move(b));
  }
  p.validate(cfg.sdp.block_cap);
  return f;
}

GapFormulation formulate_sdp(const ParentHamiltonian& ph, const CertifierMode& mode,
                             const CertifierConfig& cfg) {
  CertifierConfig with_fp = cfg;
  if (with_fp.footprints.empty()) with_fp.footprints = ph.footprints();
  return formulate_sdp(ph.operators(), ph.model.graph, mode, with_fp);
}

GapCertificate certify_terms(const std::vector<LocalOperator>& terms, const Graph& graph,
                             const CertifierMode& mode, const CertifierConfig& cfg) {
  GapFormulation f = formulate_sdp(terms, graph, mode, cfg);
  GapCertificate cert;
  cert.mode = mode;
  cert.term_count = static_cast<int>(f.terms.size());
  cert.pairs = f.pairs;
  cert.slack = cfg.slack;

  SdpSolution sol = solve(f.problem, cfg.sdp);
  cert.solver_status = to_string(sol.status);
  cert.solver_gap = sol.duality_gap;
  cert.solver_iterations = sol.iterations;
  cert.sdp_objective = sol.objective_value;
  if (sol.status == SdpStatus::kInfeasibleDetected) {
    cert.failure = "solver reported infeasibility: " + sol.message;
    return cert;
  }
  const std::size_t np = f.pairs.size();
  cert.a.resize(np);
  cert.c.resize(np);
  for (std::size_t q = 0; q < np; ++q) {
    cert.a[q] = sol.y(GapFormulation::a_index(static_cast<int>(q)));
    cert.c[q] = sol.y(GapFormulation::c_index(static_cast<int>(q)));
  }

  std::vector<AuditBlock> audit;
  for (auto [i, j] : f.blocks) {
    AuditBlock b;
    b.self = i == j;
    b.pij = f.pair_index(i, j);
    b.pji = b.self ? b.pij : f.pair_index(j, i);
    if (b.self) {
      b.pi = f.terms[i].matrix();
      b.pi2 = b.pi * b.pi;
    } else {
      Region u = f.terms[i].support().unite(f.terms[j].support());
      b.pi = f.terms[i].on(u);
      b.pj = f.terms[j].on(u);
      b.cross = b.pi * b.pj + b.pj * b.pi;
      b.pi2 = b.pi * b.pi;
      b.pj2 = b.pj * b.pj;
    }
    audit.push_back(std::move(b));
  }
  auto worst = [&](double s) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : audit)
      m = std::min(m, linalg::jacobi_min_eigenvalue(b.at(cert.a, cert.c, s)));
    return m;
  };

  double s = 0.0;
  double w0 = worst(0.0);
  if (w0 < cfg.psd_floor) {
    double hi = 1e-12;
    while (worst(hi) < cfg.psd_floor) {
      hi *= 2.0;
      if (hi > 1e3) {
        cert.failure = "shrink step could not restore feasibility";
        cert.min_block_eig = w0;
        return cert;
      }
    }
    double lo = 0.0;
    while (hi - lo > 1e-10 && hi > 1e-12) {
      double mid = 0.5 * (lo + hi);
      if (worst(mid) >= cfg.psd_floor) hi = mid;
      else lo = mid;
    }
    s = hi;
  }
  cert.shrink = s;
  for (auto& c : cert.c) c -= s;
  cert.min_block_eig = worst(0.0);

  const int n = cert.term_count;
  cert.row_sums.assign(n, 0.0);
  std::vector<double> a_rows(n, 0.0);
  for (std::size_t q = 0; q < np; ++q) {
    cert.row_sums[f.pairs[q].first] += cert.c[q];
    a_rows[f.pairs[q].first] += cert.a[q];
  }
  cert.equality_residual = 0.0;
  for (double r : a_rows) cert.equality_residual = std::max(cert.equality_residual, std::abs(r - 1.0));
  double min_row = *std::min_element(cert.row_sums.begin(), cert.row_sums.end());
  cert.delta = min_row - cfg.slack;

  if (cert.min_block_eig < -cfg.audit_tol) {
    cert.failure = "independent audit failed (min block eigenvalue " +
                   std::to_string(cert.min_block_eig) + ")";
  } else if (cert.equality_residual > cfg.audit_tol) {
    cert.failure = "row sums of a deviate from 1 by " + std::to_string(cert.equality_residual);
  } else if (!(cert.delta > 0.0)) {
    cert.failure = "no certificate at this point (delta " + std::to_string(cert.delta) + ")";
  } else {
    cert.issued = true;
  }
  return cert;
}

GapCertificate certify_point(const ModelSpec& model, const CertifierMode& mode,
                             const CertifierConfig& cfg) {
  ParentHamiltonian ph = build_parent_hamiltonian(model);
  CertifierConfig with_fp = cfg;
  if (with_fp.footprints.empty()) with_fp.footprints = ph.footprints();
  GapCertificate cert = certify_terms(ph.operators(), model.graph, mode, with_fp);
  cert.beta = model.beta;
  cert.t = model.t;
  return cert;
}

PrescanResult pairwise_prescan(const std::vector<LocalOperator>& terms,
                               const CertifierConfig& cfg) {
  PrescanResult r;
  const int n = static_cast<int>(terms.size());
  r.row_sums.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!terms[i].support().intersects(terms[j].support())) continue;
      BlockParts parts = compressed_parts(terms[i], terms[j], false, cfg.compress_tol);
      SdpProblem p;
      p.var_count = 2;
      p.objective = RVector::Constant(2, -1.0);
      p.eq_a.resize(0, 2);
      p.eq_b.resize(0);
      if (parts.pi.rows() > 0) {
        SdpBlock b;
        b.f0 = parts.cross;
        b.coeffs.emplace_back(0, parts.pi2);
        b.coeffs.emplace_back(1, parts.pj2);
        p.blocks.push_back(std::move(b));
      }
      SdpSolution sol = solve(p, cfg.sdp);
      double aij = sol.y(0), aji = sol.y(1);
      if (sol.status == SdpStatus::kInfeasibleDetected) {
        aij = aji = std::numeric_limits<double>::infinity();
      }
      r.pairs.emplace_back(i, j);
      r.a_ij.push_back(aij);
      r.a_ji.push_back(aji);
      r.min_sum.push_back(aij + aji);
      r.row_sums[i] += aij;
      r.row_sums[j] += aji;
    }
  r.gap_plausible = true;
  for (double s : r.row_sums)
    if (!(s < 1.0)) r.gap_plausible = false;
  return r;
}

PrescanResult pairwise_prescan(const ParentHamiltonian& ph, const CertifierConfig& cfg) {
  return pairwise_prescan(ph.operators(), cfg);
}

double continuity_c_prime(double a, double c, int only_i, int only_j, int common, double tau) {
  const double alpha = std::exp(-2.0 * only_i * tau);
  const double gamma = std::exp(-2.0 * only_j * tau);
  const double b = std::exp(-2.0 * common * tau);
  const double gb = gamma * b;
  // -c h_i picks up C^-2 <= 1/gamma only when c >= 0; a negative c can only
  // be moved under C^-2 >= 1 as it stands.
  const double cc = (c >= 0.0 ? gb : b) * c;
  if (a < 0.0) return cc - (1.0 - gb) - a * (gb - 1.0);
  if (a <= 1.0) return cc - (1.0 - gb) - a * (gb - alpha);
  if (1.0 - a * alpha >= 0.0) return cc - (1.0 - b) - a * (b - alpha);
  return cc - (1.0 - b) - a * b * (1.0 - alpha);
}

double ContinuityExtension::c_prime(const Pair& p, double tau) const {
  if (p.i == p.j) {
    // a h^2 - c h >= 0 with a = 1: nonzero spectrum of E h E shrinks by at
    // most exp(-2 |nu_i| tau).
    if (p.c < 0.0) return p.c;
    return std::exp(-2.0 * p.common * tau) * p.c;
  }
  return continuity_c_prime(p.a, p.c, p.only_i, p.only_j, p.common, tau);
}

double ContinuityExtension::delta_at(double tau) const {
  std::vector<double> rows(term_count, 0.0);
  for (const auto& p : pairs) rows[p.i] += c_prime(p, tau);
  return *std::min_element(rows.begin(), rows.end()) - base.slack;
}

ContinuityExtension continuity_extend(const GapCertificate& cert, const ParentHamiltonian& ph) {
  if (cert.mode.sparsity == SparsityMode::kBlocked || cert.mode.projectorized)
    throw std::invalid_argument(
        "continuity extension needs an unblocked, non-projectorized certificate");
  if (cert.term_count != static_cast<int>(ph.terms.size()))
    throw std::invalid_argument("certificate and Hamiltonian term counts differ");
  if (cert.c.size() != cert.pairs.size())
    throw std::invalid_argument("certificate carries no solution");
  // The feasible point at beta + tau only controls the pairs present at
  // beta; terms that can overlap somewhere along beta must already be paired.
  const auto fp = ph.footprints();
  for (int i = 0; i < cert.term_count; ++i)
    for (int j = i + 1; j < cert.term_count; ++j) {
      if (!fp[i].intersects(fp[j])) continue;
      if (std::find(cert.pairs.begin(), cert.pairs.end(), std::make_pair(i, j)) == cert.pairs.end())
        throw std::invalid_argument("continuity extension: terms " + std::to_string(i) + " and " +
                                    std::to_string(j) +
                                    " can overlap but the certificate has no block for them");
    }
  ContinuityExtension ext;
  ext.base = cert;
  ext.term_count = cert.term_count;
  for (std::size_t q = 0; q < cert.pairs.size(); ++q) {
    auto [i, j] = cert.pairs[q];
    const auto& ni = ph.terms[i].nu;
    const auto& nj = ph.terms[j].nu;
    std::vector<int> common, oi, oj;
    std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
    std::set_difference(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(oi));
    std::set_difference(nj.begin(), nj.end(), ni.begin(), ni.end(), std::back_inserter(oj));
    ext.pairs.push_back({i, j, cert.a[q], cert.c[q], static_cast<int>(oi.size()),
                         static_cast<int>(oj.size()), static_cast<int>(common.size())});
  }
  return ext;
}

double find_tau0(ContinuityExtension& ext, double floor, const Tau0Options& opt) {
  if (floor < 0.0) throw std::invalid_argument("find_tau0: floor must be non-negative");
  const double d0 = ext.delta_at(0.0);
  if (floor == d0) {
    ext.tau0 = 0.0;
    ext.scan_resolution = 0.0;
    return 0.0;
  }
  if (!(d0 > floor))
    throw std::invalid_argument("find_tau0: delta(0) = " + std::to_string(d0) +
                                " does not exceed the floor " + std::to_string(floor));
  double tau_max = opt.tau_max;
  while (true) {
    const double h = tau_max / opt.grid_points;
    for (int k = 1; k <= opt.grid_points; ++k) {
      double tk = k * h;
      if (ext.delta_at(tk) < floor) {
        double lo = (k - 1) * h, hi = tk;
        while (hi - lo > opt.bisection_tol) {
          double mid = 0.5 * (lo + hi);
          if (ext.delta_at(mid) >= floor) lo = mid;
          else hi = mid;
        }
        ext.tau0 = lo;
        ext.scan_resolution = h;
        return lo;
      }
    }
    if (tau_max >= opt.tau_max_limit) {
      ext.tau0 = tau_max;
      ext.scan_resolution = h;
      return tau_max;
    }
    tau_max *= 2.0;
  }
}

IntervalCertificate certify_interval(const ModelSpec& model, double beta_target, double floor,
                                     const CertifierMode& mode, const CertifierConfig& cfg) {
  if (mode.sparsity == SparsityMode::kBlocked || mode.projectorized)
    throw std::invalid_argument("certify_interval needs an unblocked, non-projectorized mode");
  if (!(beta_target >= 0.0)) throw std::invalid_argument("beta target must be non-negative");
  if (!(floor >= 0.0)) throw std::invalid_argument("floor must be non-negative");
  IntervalCertificate out;
  out.t = model.t;
  out.floor = floor;
  out.beta_target = beta_target;
  out.delta_min = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  const int kMaxPoints = 100000;
  for (int step = 0; step < kMaxPoints; ++step) {
    ModelSpec m = model.with_beta(beta);
    ParentHamiltonian ph = build_parent_hamiltonian(m);
    CertifierConfig with_fp = cfg;
    if (with_fp.footprints.empty()) with_fp.footprints = ph.footprints();
    GapCertificate cert = certify_terms(ph.operators(), m.graph, mode, with_fp);
    cert.beta = beta;
    cert.t = m.t;
    out.beta_points.push_back(beta);
    out.certificates.push_back(cert);
    if (!cert.issued) {
      out.stop_reason = "no certificate at beta=" + std::to_string(beta) + ": " + cert.failure;
      out.beta0 = step == 0 ? 0.0 : beta;
      if (step == 0) out.delta_min = 0.0;
      return out;
    }
    if (beta >= beta_target) {
      out.delta_min = std::min(out.delta_min, cert.delta);
      out.beta0 = beta;
      out.covered = true;
      out.stop_reason = "covered";
      return out;
    }
    ContinuityExtension ext = continuity_extend(cert, ph);
    if (!(cert.delta > floor)) {
      out.stop_reason = "certificate stalls at beta0=" + std::to_string(beta) +
                        ": delta does not exceed the floor";
      out.beta0 = beta;
      out.delta_min = std::min(out.delta_min, cert.delta);
      return out;
    }
    double tau0 = find_tau0(ext, floor);
    if (tau0 < 1e-8) {
      out.stop_reason = "certificate stalls at beta0=" + std::to_string(beta);
      out.beta0 = beta;
      out.delta_min = std::min(out.delta_min, cert.delta);
      return out;
    }
    double step_len = std::min(tau0, beta_target - beta);
    // Minimum of the continuity bound over the segment, on the scan grid.
    const int samples = 1000;
    double seg_min = cert.delta;
    for (int k = 1; k <= samples; ++k) seg_min = std::min(seg_min, ext.delta_at(step_len * k / samples));
    out.delta_min = std::min(out.delta_min, seg_min);
    out.tau_steps.push_back(step_len);
    beta = beta + step_len;
    if (beta_target - beta < 1e-14) beta = beta_target;
  }
  out.stop_reason = "point budget exhausted";
  out.beta0 = beta;
  return out;
}

}  // namespace tnsprep
