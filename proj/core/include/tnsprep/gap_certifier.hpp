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

#include "tnsprep/sdp_solver.hpp"
#include "tnsprep/state_engine.hpp"

namespace tnsprep {

enum class SparsityMode { kAllPairs, kOverlappingOnly, kBlocked };

struct CertifierMode {
  SparsityMode sparsity = SparsityMode::kOverlappingOnly;
  /// Neighborhood radius k for kBlocked.
  int block_radius = 0;
  /// Replace every (blocked) term by the projector onto its range.
  bool projectorized = false;

  /// "all-pairs", "overlapping-only" or "blocked:k".
  static CertifierMode parse(const std::string& text, bool projectorized = false);
  std::string name() const;
};

struct CertifierConfig {
  SdpConfig sdp;
  /// Blocks must audit at min eigenvalue >= -audit_tol.
  double audit_tol = 1e-9;
  /// The shrink step drives every block to min eigenvalue >= psd_floor.
  double psd_floor = -1e-11;
  /// Subtracted from the min row sum in the reported delta.
  double slack = 1e-8;
  /// Eigenvalue cut (relative) for compressing blocks onto range(h_i + h_j).
  double compress_tol = 1e-10;
  /// Declared supports used by the overlap test, one per term. Empty uses
  /// the numeric supports, which shrink where a term acts trivially (all of
  /// FX-GIBBS4 at beta = 0) and would change the pair set along beta.
  std::vector<Region> footprints;
};

/// The gap SDP in solver form. Variable 0 is x; ordered pair p owns a_p at
/// 1 + 2p and c_p at 2 + 2p. A term without any retained partner gets a
/// self pair (i, i) with constraint a_ii h_i^2 - c_ii h_i >= 0.
struct GapFormulation {
  std::vector<LocalOperator> terms;
  /// Original term indices summed into each entry of `terms`.
  std::vector<std::vector<int>> groups;
  std::vector<std::pair<int, int>> pairs;
  /// Unordered pairs (i <= j) with one PSD block each, in problem order.
  std::vector<std::pair<int, int>> blocks;
  SdpProblem problem;

  static int a_index(int p) { return 1 + 2 * p; }
  static int c_index(int p) { return 2 + 2 * p; }
  int pair_index(int i, int j) const;
};

GapFormulation formulate_sdp(const std::vector<LocalOperator>& terms, const Graph& graph,
                             const CertifierMode& mode, const CertifierConfig& config = {});
GapFormulation formulate_sdp(const ParentHamiltonian& ph, const CertifierMode& mode,
                             const CertifierConfig& config = {});

/// h_i h_j + h_j h_i + a_ij h_i^2 + a_ji h_j^2 - c_ij h_i - c_ji h_j on the
/// joint support. With i == j: a h_i^2 - c h_i.
CMatrix pair_block(const LocalOperator& hi, const LocalOperator& hj, double a_ij, double a_ji,
                   double c_ij, double c_ji, bool self = false);

struct GapCertificate {
  bool issued = false;
  std::string failure;
  double beta = 0.0;
  double t = 0.0;
  /// min_i sum_j (c_ij - shrink) - slack.
  double delta = 0.0;
  CertifierMode mode;
  int term_count = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> a;
  /// Post-shrink values.
  std::vector<double> c;
  std::vector<double> row_sums;
  double min_block_eig = 0.0;
  double equality_residual = 0.0;
  double shrink = 0.0;
  double slack = 0.0;
  std::string solver_status;
  double solver_gap = 0.0;
  int solver_iterations = 0;
  double sdp_objective = 0.0;

  double a_of(int i, int j) const;
  double c_of(int i, int j) const;
};

GapCertificate certify_terms(const std::vector<LocalOperator>& terms, const Graph& graph,
                             const CertifierMode& mode, const CertifierConfig& config = {});
GapCertificate certify_point(const ModelSpec& model, const CertifierMode& mode,
                             const CertifierConfig& config = {});

struct PrescanResult {
  /// Unordered overlapping pairs (i < j) with the optimal split.
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> a_ij;
  std::vector<double> a_ji;
  std::vector<double> min_sum;
  std::vector<double> row_sums;
  /// Heuristic: every row sum of a below 1.
  bool gap_plausible = false;
};

PrescanResult pairwise_prescan(const std::vector<LocalOperator>& terms,
                               const CertifierConfig& config = {});
PrescanResult pairwise_prescan(const ParentHamiltonian& ph, const CertifierConfig& config = {});

/// c' for one ordered pair after moving beta by tau, given
/// |nu_i \ nu_j|, |nu_j \ nu_i| and |nu_i n nu_j|.
double continuity_c_prime(double a, double c, int only_i, int only_j, int common, double tau);

struct ContinuityExtension {
  struct Pair {
    int i;
    int j;
    double a;
    double c;
    int only_i;
    int only_j;
    int common;
  };

  GapCertificate base;
  std::vector<Pair> pairs;
  int term_count = 0;
  double tau0 = 0.0;
  /// Grid spacing of the crossing scan behind tau0.
  double scan_resolution = 0.0;

  double c_prime(const Pair& p, double tau) const;
  /// min_i sum_j c'_ij(tau) - slack.
  double delta_at(double tau) const;
};

/// Requires a certificate from an unblocked, non-projectorized formulation of ph.
ContinuityExtension continuity_extend(const GapCertificate& cert, const ParentHamiltonian& ph);

struct Tau0Options {
  int grid_points = 10000;
  double tau_max = 1.0;
  double tau_max_limit = 64.0;
  double bisection_tol = 1e-10;
};

/// First crossing of delta(tau) below the floor, located by a grid scan and
/// refined by bisection. Stores tau0 and the scan resolution in ext.
double find_tau0(ContinuityExtension& ext, double floor, const Tau0Options& options = {});

struct IntervalCertificate {
  double t = 0.0;
  double floor = 0.0;
  double beta_target = 0.0;
  std::vector<double> beta_points;
  std::vector<GapCertificate> certificates;
  std::vector<double> tau_steps;
  /// Minimum of the continuity lower bounds over the covered interval.
  double delta_min = 0.0;
  double beta0 = 0.0;
  bool covered = false;
  std::string stop_reason;
};

IntervalCertificate certify_interval(const ModelSpec& model, double beta_target, double floor,
                                     const CertifierMode& mode,
                                     const CertifierConfig& config = {});

}  // namespace tnsprep
