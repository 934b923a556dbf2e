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

#include <string>
#include <utility>
#include <vector>

#include "tnsprep/linalg.hpp"

namespace tnsprep {

/// One linear matrix inequality F0 + sum_k y_k F_k >= 0. Variables absent
/// from `coeffs` have F_k = 0.
struct SdpBlock {
  RMatrix f0;
  std::vector<std::pair<int, RMatrix>> coeffs;

  int dim() const { return static_cast<int>(f0.rows()); }
  RMatrix evaluate(const RVector& y) const;
};

/// maximize objective . y subject to every block PSD and eq_a y = eq_b.
struct SdpProblem {
  int var_count = 0;
  RVector objective;
  std::vector<SdpBlock> blocks;
  RMatrix eq_a;
  RVector eq_b;

  /// Throws std::invalid_argument on asymmetric or inconsistent data, or a
  /// block larger than block_cap.
  void validate(int block_cap = 256) const;
};

enum class SdpStatus { kOptimal, kInfeasibleDetected, kMaxIter };
std::string to_string(SdpStatus s);

struct SdpConfig {
  double gap_tol = 1e-7;
  double feas_tol = 1e-9;
  int max_iter = 100;
  int block_cap = 256;
};

struct SdpSolution {
  RVector y;
  double objective_value = 0.0;
  /// Objective of the conic dual at the final iterate.
  double dual_objective = 0.0;
  /// |dual_objective - objective_value|.
  double duality_gap = 0.0;
  std::vector<double> per_block_min_eig;
  double equality_residual = 0.0;
  SdpStatus status = SdpStatus::kMaxIter;
  int iterations = 0;
  std::string message;

  double min_block_eig() const;
};

/// Infeasible-start primal-dual interior point method (HKM direction with
/// Mehrotra predictor-corrector). Equalities are eliminated through a null
/// space basis and directions that leave every block unchanged are removed
/// before iterating. Deterministic for identical inputs.
SdpSolution solve(const SdpProblem& problem, const SdpConfig& config = {});

struct FeasibilityReport {
  std::vector<double> block_min_eig;
  double min_eig = 0.0;
  double equality_residual = 0.0;
  bool feasible = false;
};

/// Audits y with the Jacobi eigensolver, independent of the solver path.
FeasibilityReport verify_feasibility(const SdpProblem& problem, const RVector& y,
                                     double tol = 1e-9);

/// Self-describing JSON text.
std::string dump_problem(const SdpProblem& problem);
SdpProblem load_problem(const std::string& text);

}  // namespace tnsprep
