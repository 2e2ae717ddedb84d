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

// Size-adjusted Chernoff information between embedded blocks, with the block
// mean/variance inputs for ASE (Bernoulli entries) and DASE (Poisson-binomial
// entries of A*A).

#include <Eigen/Dense>

#include "dase/graph.hpp"
#include "dase/labels.hpp"

namespace dase::theory {

using Index = Eigen::Index;

/// Block mean matrix M, block variance matrix C and block proportions (the
/// diagonal of Pi).
struct ChernoffInputs {
  Eigen::MatrixXd M;
  Eigen::MatrixXd C;
  Eigen::VectorXd pi;

  Index K() const { return M.rows(); }
  /// Shapes agree, C > 0 entrywise, pi in (0, 1) summing to one.
  void validate() const;
};

/// M = B, C = B (1 - B) entrywise, Pi = diag(pi). Throws std::domain_error if
/// any entry of B is exactly 0 or 1 (zero variance).
ChernoffInputs ase_block_moments(const Eigen::MatrixXd& B, const Eigen::VectorXd& pi);

/// Block means and variances of A*A in closed form:
///   M_ab = sum_c n_c B_ac B_cb,  C_ab = sum_c n_c B_ac B_cb (1 - B_ac B_cb),
/// Pi = diag(n / N).
ChernoffInputs dase_block_moments(const Eigen::MatrixXd& B, const Eigen::VectorXd& sizes);
ChernoffInputs dase_block_moments(const graph::BlockModel& model, const Eigen::VectorXd& sizes);

/// Plug-in moments from an observed graph and a partition: per block pair,
/// the mean and population variance of the off-diagonal entries of A
/// (doubled = false) or A*A (doubled = true).
ChernoffInputs empirical_block_moments(const graph::AdjacencyMatrix& A,
                                       const ClusterLabels& labels, bool doubled);

struct ChernoffPair {
  double value = 0.0;
  double t = 0.5;
};

/// sup over t in (0, 1) of t(1-t)/2 * e^T M Pi S_kl(t)^{-1} M e with
/// e = e_k - e_l and S_kl(t) = (1-t) diag(C_k) + t diag(C_l). A 64-point grid
/// locates the bracket; golden-section search refines t to 1e-8. A supremum
/// that is not positive is reported as 0.
ChernoffPair chernoff_pair(const ChernoffInputs& in, Index k, Index l);

/// min over ordered pairs k != l of chernoff_pair. Needs K >= 2.
double chernoff_information(const ChernoffInputs& in);

}  // namespace dase::theory
