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

#include "tnsprep/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tnsprep {

RMatrix SdpBlock::evaluate(const RVector& y) const {
  RMatrix f = f0;
  for (const auto& [k, fk] : coeffs) f += y(k) * fk;
  return f;
}

void SdpProblem::validate(int block_cap) const {
  if (var_count < 0) throw std::invalid_argument("sdp: negative variable count");
  if (objective.size() != var_count)
    throw std::invalid_argument("sdp: objective length does not match var_count");
  if (eq_a.rows() != eq_b.size())
    throw std::invalid_argument("sdp: equality matrix and right-hand side disagree");
  if (eq_a.rows() > 0 && eq_a.cols() != var_count)
    throw std::invalid_argument("sdp: equality matrix has wrong column count");
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const auto& b = blocks[l];
    const std::string where = "sdp block " + std::to_string(l);
    if (b.f0.rows() != b.f0.cols() || b.f0.rows() == 0)
      throw std::invalid_argument(where + ": F0 must be square and non-empty");
    if (b.dim() > block_cap)
      throw std::invalid_argument(where + ": dimension " + std::to_string(b.dim()) +
                                  " exceeds cap " + std::to_string(block_cap));
    auto check_sym = [&](const RMatrix& m, const std::string& what) {
      if (m.rows() != b.f0.rows() || m.cols() != b.f0.cols())
        throw std::invalid_argument(where + ": " + what + " has inconsistent dimension");
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(where + ": " + what + " is not symmetric");
    };
    check_sym(b.f0, "F0");
    for (const auto& [k, fk] : b.coeffs) {
      if (k < 0 || k >= var_count) throw std::invalid_argument(where + ": variable out of range");
      check_sym(fk, "F" + std::to_string(k + 1));
    }
  }
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kInfeasibleDetected: return "infeasible-detected";
    case SdpStatus::kMaxIter: return "max-iter";
  }
  return "unknown";
}

double SdpSolution::min_block_eig() const {
  double m = std::numeric_limits<double>::infinity();
  for (double e : per_block_min_eig) m = std::min(m, e);
  return m;
}

namespace {

double inner(const RMatrix& a, const RMatrix& b) { return a.cwiseProduct(b).sum(); }

RMatrix sym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

// Standard form after elimination: maximize b.w + offset subject to
// S_l = C_l - sum_i w_i A_li >= 0. Original variables are y = y0 + T w.
struct Reduced {
  RVector y0;
  RMatrix t;
  std::vector<RMatrix> c;
  std::vector<std::vector<RMatrix>> a;
  std::vector<std::vector<bool>> nonzero;
  RVector b;
  double offset = 0.0;
};

// Largest alpha with m + alpha dm PSD, given m PD.
double max_step(const RMatrix& m, const RMatrix& dm) {
  Eigen::LLT<RMatrix> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  RMatrix z = llt.matrixL().solve(dm);
  z = llt.matrixL().solve(z.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(z), Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lo;
}

SdpSolution finish(const SdpProblem& p, const RVector& y, SdpStatus status, int iters,
                   std::string message) {
  SdpSolution s;
  s.y = y;
  s.status = status;
  s.iterations = iters;
  s.message = std::move(message);
  s.objective_value = p.objective.dot(y);
  for (const auto& blk : p.blocks) s.per_block_min_eig.push_back(linalg::min_eigenvalue(blk.evaluate(y)));
  s.equality_residual = p.eq_a.rows() > 0 ? (p.eq_a * y - p.eq_b).cwiseAbs().maxCoeff() : 0.0;
  return s;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpConfig& cfg) {
  p.validate(cfg.block_cap);
  const int v = p.var_count;

  // Eliminate equalities: y = y0 + N z.
  Reduced r;
  RMatrix null_basis;
  if (p.eq_a.rows() > 0) {
    Eigen::JacobiSVD<RMatrix> svd(p.eq_a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-12 * std::max(1.0, smax)) ++rank;
    RVector ub = svd.matrixU().transpose() * p.eq_b;
    RVector coef = RVector::Zero(v);
    for (int i = 0; i < rank; ++i) coef(i) = ub(i) / sv(i);
    r.y0 = svd.matrixV() * coef;
    double res = (p.eq_a * r.y0 - p.eq_b).norm();
    if (res > 1e-9 * (1.0 + p.eq_b.norm()))
      return finish(p, r.y0, SdpStatus::kInfeasibleDetected, 0,
                    "equality constraints are inconsistent (residual " + std::to_string(res) + ")");
    null_basis = svd.matrixV().rightCols(v - rank);
  } else {
    r.y0 = RVector::Zero(v);
    null_basis = RMatrix::Identity(v, v);
  }

  const std::size_t nb = p.blocks.size();
  const int p0 = static_cast<int>(null_basis.cols());
  // G_li = sum_k N_ki F_lk for the raw null-space directions.
  std::vector<std::vector<RMatrix>> g(nb);
  for (std::size_t l = 0; l < nb; ++l) {
    const auto& blk = p.blocks[l];
    g[l].assign(p0, RMatrix::Zero(blk.dim(), blk.dim()));
    for (const auto& [k, fk] : blk.coeffs)
      for (int i = 0; i < p0; ++i)
        if (null_basis(k, i) != 0.0) g[l][i] += null_basis(k, i) * fk;
  }
  RVector bn = null_basis.transpose() * p.objective;

  // Drop directions that change no block.
  RMatrix gram = RMatrix::Zero(p0, p0);
  for (std::size_t l = 0; l < nb; ++l)
    for (int i = 0; i < p0; ++i)
      for (int j = i; j < p0; ++j) {
        double x = inner(g[l][i], g[l][j]);
        gram(i, j) += x;
        if (i != j) gram(j, i) += x;
      }
  RMatrix keep;
  if (p0 > 0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(gram);
    double emax = std::max(0.0, es.eigenvalues().maxCoeff());
    std::vector<int> idx;
    for (int i = 0; i < p0; ++i)
      if (es.eigenvalues()(i) > 1e-12 * emax && emax > 0.0) idx.push_back(i);
    keep.resize(p0, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) keep.col(c) = es.eigenvectors().col(idx[c]);
    RVector stray = bn - keep * (keep.transpose() * bn);
    if (stray.norm() > 1e-9 * (1.0 + bn.norm()))
      return finish(p, r.y0, SdpStatus::kInfeasibleDetected, 0,
                    "objective is unbounded along a direction that leaves every block unchanged");
  } else {
    keep.resize(0, 0);
  }
  const int m = static_cast<int>(keep.cols());
  r.t = null_basis * keep;
  r.b = keep.transpose() * bn;
  r.offset = p.objective.dot(r.y0);
  r.c.resize(nb);
  r.a.resize(nb);
  r.nonzero.resize(nb);
  int n_tot = 0;
  for (std::size_t l = 0; l < nb; ++l) {
    r.c[l] = p.blocks[l].evaluate(r.y0);
    r.a[l].resize(m);
    r.nonzero[l].resize(m);
    for (int i = 0; i < m; ++i) {
      RMatrix gi = RMatrix::Zero(p.blocks[l].dim(), p.blocks[l].dim());
      for (int j = 0; j < p0; ++j) gi += keep(j, i) * g[l][j];
      r.a[l][i] = -sym(gi);
      r.nonzero[l][i] = r.a[l][i].cwiseAbs().maxCoeff() > 0.0;
    }
    n_tot += p.blocks[l].dim();
  }

  if (m == 0 || nb == 0) {
    SdpSolution s = finish(p, r.y0, SdpStatus::kOptimal, 0, "no free directions");
    if (s.min_block_eig() < -cfg.feas_tol) {
      s.status = SdpStatus::kInfeasibleDetected;
      s.message = "unique point fixed by the equalities violates a block";
    }
    s.dual_objective = s.objective_value;
    return s;
  }

  // Starting point.
  double norm_c = 0.0;
  for (const auto& c : r.c) norm_c = std::max(norm_c, c.norm());
  double xi_x = std::max(10.0, std::sqrt(static_cast<double>(n_tot)));
  double xi_s = xi_x;
  for (int i = 0; i < m; ++i) {
    double an = 0.0;
    for (std::size_t l = 0; l < nb; ++l) an += r.a[l][i].squaredNorm();
    an = std::sqrt(an);
    xi_x = std::max(xi_x, n_tot * (1.0 + std::abs(r.b(i))) / (1.0 + an));
    xi_s = std::max(xi_s, an);
  }
  xi_s = std::max(xi_s, norm_c);
  std::vector<RMatrix> x(nb), s(nb), rd(nb), sinv(nb), dx(nb), ds(nb), dxa(nb), dsa(nb);
  for (std::size_t l = 0; l < nb; ++l) {
    const int d = p.blocks[l].dim();
    x[l] = xi_x * RMatrix::Identity(d, d);
    s[l] = xi_s * RMatrix::Identity(d, d);
  }
  RVector w = RVector::Zero(m);
  const double norm_b = r.b.norm();

  auto dual_obj = [&]() { return r.b.dot(w) + r.offset; };
  auto primal_obj = [&]() {
    double v0 = r.offset;
    for (std::size_t l = 0; l < nb; ++l) v0 += inner(r.c[l], x[l]);
    return v0;
  };

  // Solves the Newton system for complementarity target rc.
  auto direction = [&](const Eigen::LDLT<RMatrix>& mfac, const RVector& rp,
                       const std::vector<RMatrix>& rc, std::vector<RMatrix>& out_dx,
                       std::vector<RMatrix>& out_ds, RVector& out_dw) {
    RVector rhs = rp;
    std::vector<RMatrix> k(nb);
    for (std::size_t l = 0; l < nb; ++l) {
      k[l] = (rc[l] - x[l] * rd[l]) * sinv[l];
      for (int i = 0; i < m; ++i)
        if (r.nonzero[l][i]) rhs(i) -= inner(r.a[l][i], k[l]);
    }
    out_dw = mfac.solve(rhs);
    for (std::size_t l = 0; l < nb; ++l) {
      out_ds[l] = rd[l];
      for (int i = 0; i < m; ++i)
        if (r.nonzero[l][i]) out_ds[l] -= out_dw(i) * r.a[l][i];
      out_ds[l] = sym(out_ds[l]);
      out_dx[l] = sym((rc[l] - x[l] * out_ds[l]) * sinv[l]);
    }
  };

  SdpStatus status = SdpStatus::kMaxIter;
  std::string message = "iteration limit reached";
  int iter = 0;
  int stalls = 0;
  for (; iter <= cfg.max_iter; ++iter) {
    RVector rp = r.b;
    double mu = 0.0;
    double dinf = 0.0;
    for (std::size_t l = 0; l < nb; ++l) {
      for (int i = 0; i < m; ++i)
        if (r.nonzero[l][i]) rp(i) -= inner(r.a[l][i], x[l]);
      rd[l] = r.c[l] - s[l];
      for (int i = 0; i < m; ++i)
        if (r.nonzero[l][i]) rd[l] -= w(i) * r.a[l][i];
      mu += inner(x[l], s[l]);
      dinf = std::max(dinf, rd[l].norm());
    }
    mu /= n_tot;
    double pinf = rp.norm() / (1.0 + norm_b);
    dinf /= (1.0 + norm_c);
    double pobj = primal_obj();
    double dobj = dual_obj();
    double gap = std::abs(pobj - dobj);
    if (gap <= 0.5 * cfg.gap_tol && pinf <= cfg.feas_tol && dinf <= 0.1 * cfg.feas_tol) {
      status = SdpStatus::kOptimal;
      message = "converged";
      break;
    }
    if (w.norm() > 1e12 || mu > 1e30) {
      status = SdpStatus::kInfeasibleDetected;
      message = "iterates diverge; problem appears infeasible or unbounded";
      break;
    }
    if (iter == cfg.max_iter) break;

    // Schur complement M_ij = tr(A_i X A_j S^-1).
    RMatrix mm = RMatrix::Zero(m, m);
    bool ok = true;
    for (std::size_t l = 0; l < nb; ++l) {
      Eigen::LLT<RMatrix> llt(s[l]);
      if (llt.info() != Eigen::Success) { ok = false; break; }
      sinv[l] = llt.solve(RMatrix::Identity(s[l].rows(), s[l].cols()));
      for (int i = 0; i < m; ++i) {
        if (!r.nonzero[l][i]) continue;
        RMatrix wi = x[l] * r.a[l][i] * sinv[l];
        for (int j = 0; j <= i; ++j) {
          if (!r.nonzero[l][j]) continue;
          double val = (r.a[l][j].cwiseProduct(wi.transpose())).sum();
          mm(i, j) += val;
          if (i != j) mm(j, i) += val;
        }
      }
    }
    if (!ok) {
      message = "numerical breakdown: slack lost definiteness";
      break;
    }
    mm = sym(mm);
    Eigen::LDLT<RMatrix> mfac(mm);
    if (mfac.info() != Eigen::Success) {
      message = "numerical breakdown: Schur complement factorization failed";
      break;
    }

    std::vector<RMatrix> rc(nb);
    for (std::size_t l = 0; l < nb; ++l) rc[l] = -x[l] * s[l];
    RVector dwa;
    direction(mfac, rp, rc, dxa, dsa, dwa);
    double ap = 1.0, ad = 1.0;
    for (std::size_t l = 0; l < nb; ++l) {
      ap = std::min(ap, max_step(x[l], dxa[l]));
      ad = std::min(ad, max_step(s[l], dsa[l]));
    }
    double mu_aff = 0.0;
    for (std::size_t l = 0; l < nb; ++l)
      mu_aff += inner(x[l] + ap * dxa[l], s[l] + ad * dsa[l]);
    mu_aff /= n_tot;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    for (std::size_t l = 0; l < nb; ++l) {
      const int d = p.blocks[l].dim();
      rc[l] = sigma * mu * RMatrix::Identity(d, d) - x[l] * s[l] - dxa[l] * dsa[l];
    }
    RVector dw;
    direction(mfac, rp, rc, dx, ds, dw);
    ap = std::numeric_limits<double>::infinity();
    ad = ap;
    for (std::size_t l = 0; l < nb; ++l) {
      ap = std::min(ap, max_step(x[l], dx[l]));
      ad = std::min(ad, max_step(s[l], ds[l]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (ap < 1e-12 && ad < 1e-12) {
      if (++stalls >= 3) {
        message = "numerical breakdown: step lengths vanished";
        break;
      }
    } else {
      stalls = 0;
    }
    for (std::size_t l = 0; l < nb; ++l) {
      x[l] = sym(x[l] + ap * dx[l]);
      s[l] = sym(s[l] + ad * ds[l]);
    }
    w += ad * dw;
  }

  RVector y = r.y0 + r.t * w;
  SdpSolution sol = finish(p, y, status, iter, message);
  sol.dual_objective = primal_obj();
  sol.duality_gap = std::abs(sol.dual_objective - (r.b.dot(w) + r.offset));
  return sol;
}

FeasibilityReport verify_feasibility(const SdpProblem& p, const RVector& y, double tol) {
  if (y.size() != p.var_count)
    throw std::invalid_argument("verify_feasibility: y has wrong length");
  FeasibilityReport rep;
  rep.min_eig = std::numeric_limits<double>::infinity();
  for (const auto& blk : p.blocks) {
    RVector ev = linalg::jacobi_eigenvalues(blk.evaluate(y));
    double lo = ev.size() ? ev(0) : 0.0;
    rep.block_min_eig.push_back(lo);
    rep.min_eig = std::min(rep.min_eig, lo);
  }
  if (p.blocks.empty()) rep.min_eig = 0.0;
  rep.equality_residual = p.eq_a.rows() > 0 ? (p.eq_a * y - p.eq_b).cwiseAbs().maxCoeff() : 0.0;
  rep.feasible = rep.min_eig >= -tol && rep.equality_residual <= tol;
  return rep;
}

}  // namespace tnsprep
