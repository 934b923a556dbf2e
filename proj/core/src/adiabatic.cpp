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

#include <cmath>
#include <stdexcept>

#include "tnsprep/state_engine.hpp"

namespace tnsprep {

namespace {

// Dense H(beta) with the site index sets and projectors fixed up front.
class HamiltonianPath {
 public:
  HamiltonianPath(const ModelSpec& model, std::function<double(double)> beta_of_s)
      : model_(model), beta_of_s_(std::move(beta_of_s)) {
    const int n = model.n();
    std::vector<Vertex> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    all_ = Region(std::move(all));
    for (Vertex j = 0; j < n; ++j) {
      sets_.push_back(mu_nu_sets(model, j));
      const auto& phi = model.product_state[j];
      CMatrix pi = CMatrix::Identity(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) pi(r, c) -= phi[r] * std::conj(phi[c]);
      projectors_.emplace_back(Region{j}, pi);
    }
  }

  CMatrix at(double s) const {
    ModelSpec m = model_;
    m.beta = beta_of_s_(s);
    const Eigen::Index dim = Eigen::Index{1} << model_.n();
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Vertex j = 0; j < model_.n(); ++j) {
      LocalMatrix o = build_O(m, sets_[j], Region{j});
      LocalMatrix term = o.adjoint() * projectors_[j] * o;
      h += term.on(all_);
    }
    return linalg::hermitian_part(h);
  }

 private:
  const ModelSpec& model_;
  std::function<double(double)> beta_of_s_;
  Region all_;
  std::vector<MuNu> sets_;
  std::vector<LocalMatrix> projectors_;
};

CMatrix unitary_exp(const CMatrix& k) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(k));
  CVector ph = (cplx(0, -1) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

CVector integrate(const HamiltonianPath& path, const CVector& seed, double total_time, int steps) {
  static const double kGauss = std::sqrt(3.0) / 6.0;
  static const double kComm = std::sqrt(3.0) / 12.0;
  CVector psi = seed;
  const double h = 1.0 / steps;
  const cplx i(0, 1);
  for (int k = 0; k < steps; ++k) {
    double s0 = k * h;
    CMatrix h1 = path.at(s0 + (0.5 - kGauss) * h);
    CMatrix h2 = path.at(s0 + (0.5 + kGauss) * h);
    CMatrix gen = (h * total_time / 2.0) * (h1 + h2) -
                  i * (kComm * h * h * total_time * total_time) * (h2 * h1 - h1 * h2);
    psi = unitary_exp(gen) * psi;
  }
  return psi;
}

}  // namespace

AdiabaticResult adiabatic_evolve(const ModelSpec& model, const AdiabaticSchedule& schedule,
                                 const StateVector* seed, const EngineLimits& limits) {
  require_valid(model);
  if (!(schedule.total_time > 0.0))
    throw std::invalid_argument("adiabatic_evolve: total time must be positive");
  if (model.n() > limits.max_dense_qubits)
    throw BudgetExceeded("adiabatic_evolve: dense Hamiltonian budget exceeded");
  auto beta_of_s = schedule.beta_path;
  if (!beta_of_s) {
    double target = schedule.target_beta;
    beta_of_s = [target](double s) { return s * target; };
  }
  if (std::abs(beta_of_s(0.0)) > 1e-12)
    throw std::invalid_argument("adiabatic_evolve: beta path must start at 0");
  if (std::abs(beta_of_s(1.0) - schedule.target_beta) > 1e-12)
    throw std::invalid_argument("adiabatic_evolve: beta path must end at the target beta");
  double prev = beta_of_s(0.0);
  for (int k = 1; k <= 100; ++k) {
    double b = beta_of_s(k / 100.0);
    if (b < prev - 1e-15 || b < 0.0)
      throw std::invalid_argument("adiabatic_evolve: beta path must be non-decreasing");
    prev = b;
  }

  ModelSpec start = model;
  start.beta = 0.0;
  CVector psi0 = seed ? seed->amplitudes : build_state(start, limits).amplitudes;
  if (psi0.size() != (Eigen::Index{1} << model.n()))
    throw std::invalid_argument("adiabatic_evolve: seed dimension mismatch");
  ModelSpec target_model = model;
  target_model.beta = schedule.target_beta;
  StateVector target = build_state(target_model, limits);

  HamiltonianPath path(model, beta_of_s);
  int steps = schedule.initial_steps;
  if (steps <= 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(path.at(1.0), Eigen::EigenvaluesOnly);
    double hn = es.eigenvalues().cwiseAbs().maxCoeff();
    steps = std::max(32, static_cast<int>(std::ceil(schedule.total_time * hn / 2.0)));
  }
  CVector coarse = integrate(path, psi0, schedule.total_time, steps);
  AdiabaticResult out;
  while (true) {
    if (2 * steps > schedule.max_steps)
      throw DomainError("adiabatic_evolve: step-size refinement exceeded " +
                        std::to_string(schedule.max_steps) + " steps");
    CVector fine = integrate(path, psi0, schedule.total_time, 2 * steps);
    double diff = (fine - coarse).norm();
    steps *= 2;
    coarse = std::move(fine);
    if (diff <= schedule.richardson_tol) {
      out.richardson_difference = diff;
      break;
    }
  }
  out.steps = steps;
  out.norm_drift = std::abs(coarse.norm() - psi0.norm());
  if (out.norm_drift > schedule.drift_tol)
    throw DomainError("adiabatic_evolve: norm drift " + std::to_string(out.norm_drift) +
                      " exceeds tolerance");
  out.final_state.amplitudes = coarse;
  out.final_state.norm_constant = 1.0;
  out.fidelity = std::norm(target.amplitudes.dot(coarse));
  return out;
}

}  // namespace tnsprep
