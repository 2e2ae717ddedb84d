// Copyright 2026 The DASE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Empirical check of the Frobenius concentration of the Gram matrices of
// A*A around their expectation.

#include <Eigen/Dense>

#include <vector>

#include "dase/graph.hpp"
#include "dase/rng.hpp"

namespace dase::theory {

using Index = Eigen::Index;

struct ConcentrationReport {
  int replicates = 0;
  int reference_samples = 0;
  double N = 0.0;
  /// sqrt(2 N^7 log N)
  double general_bound = 0.0;
  /// sqrt(2) T1~ sqrt(N^5 log N) and sqrt(2) T2~ sqrt(N^5 log N); NaN unless
  /// the model is a valid two-block core-periphery model.
  double core_bound_left = 0.0;
  double core_bound_right = 0.0;
  /// Violations of the general bound by |GG^T - E|_F (left) and |G^T G - E|_F
  /// (right), G = A*A.
  int violations_gram_left = 0;
  int violations_gram_right = 0;
  int core_violations_left = 0;
  int core_violations_right = 0;
  std::vector<double> deviation_left;
  std::vector<double> deviation_right;
};

/// The expectations come from a Monte Carlo mean over `reference_samples`
/// graphs drawn on a stream disjoint from the replicates.
ConcentrationReport concentration_check(const graph::BlockModel& model,
                                        const graph::CommunityAssignment& assignment,
                                        int replicates, Seed seed,
                                        int reference_samples = 1000);

/// sum_l Q_ul Q_vl Q_lw (1 - Q_lw): the covariance of (A*A)_uw and (A*A)_vw
/// for u != v when the entries of A are independent Bernoulli(Q) and Q has a
/// zero diagonal.
double two_step_covariance(const Eigen::MatrixXd& Q, Index u, Index v, Index w);

}  // namespace dase::theory
