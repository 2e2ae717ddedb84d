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

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "dase/labels.hpp"

namespace dase::theory {

using Index = Eigen::Index;

/// Contingency table of two labelings: counts(i, j) = #{u : a_u = i, b_u = j}.
struct ConfusionTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::int64_t N = 0;
};

ConfusionTable confusion(const ClusterLabels& a, const ClusterLabels& b);

/// Mutual information over sqrt(H(a) H(b)), natural logarithms. When either
/// entropy vanishes the result is 1 for identical partitions, else 0.
double nmi(const ClusterLabels& a, const ClusterLabels& b);

struct Misclustering {
  std::int64_t count = 0;
  double rate = 0.0;
  /// best_perm[estimated label] = truth label it is matched to (-1 when the
  /// estimate has more clusters than the truth and the label is unmatched).
  std::vector<int> best_perm;
};

/// min over label permutations rho of #{u : truth_u != rho(est_u)}.
/// Exhaustive search when max(K_truth, K_est) <= 8, Hungarian otherwise.
Misclustering misclustering(const ClusterLabels& truth, const ClusterLabels& est);

/// Min-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

}  // namespace dase::theory
