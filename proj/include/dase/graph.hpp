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

// Generative model and graph containers: stochastic block models with a
// core-periphery parameterization, sampled adjacency matrices, the doubled
// adjacency AA and the expected (population) matrices behind them.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <utility>
#include <vector>

#include "dase/labels.hpp"
#include "dase/rng.hpp"

namespace dase::graph {

using Index = Eigen::Index;
using SparseBinary = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseCount = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

/// Block probability matrix B (K x K, entries in [0, 1]), group proportions pi
/// (positive, summing to one) and a direction flag. Undirected models require
/// a symmetric B.
struct BlockModel {
  Eigen::MatrixXd B;
  Eigen::VectorXd pi;
  bool directed = true;

  Index K() const { return B.rows(); }

  /// Validating constructor; throws std::invalid_argument.
  static BlockModel create(Eigen::MatrixXd B, Eigen::VectorXd pi, bool directed);

  void validate() const;
};

/// Two-block core-periphery probabilities: p within the core, q from core to
/// periphery, r from periphery to core and s within the periphery.
struct CorePeripheryParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;

  /// Throws unless 0 <= s < q, r < p <= 1.
  void validate() const;
  bool is_valid() const noexcept;

  /// [[p, q], [r, s]]
  Eigen::Matrix2d block_matrix() const;

  static CorePeripheryParams from_block_matrix(const Eigen::MatrixXd& B);
};

/// Node-to-block map with cached block sizes.
struct CommunityAssignment {
  std::vector<int> labels;  // 0-based block index per node
  std::vector<Index> sizes; // sizes[k] = #{u : labels[u] == k}

  Index N() const { return static_cast<Index>(labels.size()); }
  Index K() const { return static_cast<Index>(sizes.size()); }

  /// Builds the sizes table. Throws if a label lies outside [0, K).
  static CommunityAssignment from_labels(std::vector<int> labels, Index K);

  /// N x K membership indicator Z.
  Eigen::MatrixXd indicator() const;

  ClusterLabels as_labels() const;
};

/// Binary adjacency matrix with zero diagonal, stored in compressed rows.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;

  /// Validates 0/1 entries with a zero diagonal, plus symmetry when undirected.
  AdjacencyMatrix(SparseBinary entries, bool directed);

  /// Builds from (source, target) pairs. Undirected inputs are mirrored;
  /// duplicates collapse. Self-loops are rejected.
  static AdjacencyMatrix from_edges(Index n,
                                    const std::vector<std::pair<Index, Index>>& edges,
                                    bool directed);

  /// Thresholds a dense 0/1 matrix (entries > 0.5 become edges).
  static AdjacencyMatrix from_dense(const Eigen::MatrixXd& dense, bool directed);

  Index size() const { return entries_.rows(); }
  bool directed() const { return directed_; }

  /// Directed: number of arcs. Undirected: number of unordered pairs.
  Index edge_count() const;

  const SparseBinary& matrix() const { return entries_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }

  /// Out-degree plus in-degree (undirected graphs count each edge twice).
  Eigen::VectorXd total_degree() const;

 private:
  SparseBinary entries_;
  bool directed_ = true;
};

/// A*A: entry (i, j) counts the directed two-step walks i -> k -> j.
class DoubledAdjacency {
 public:
  DoubledAdjacency(SparseCount entries, bool directed)
      : entries_(std::move(entries)), directed_(directed) {}

  Index size() const { return entries_.rows(); }
  bool directed() const { return directed_; }
  const SparseCount& matrix() const { return entries_; }
  Eigen::MatrixXd dense() const;

 private:
  SparseCount entries_;
  bool directed_;
};

/// Population matrices: Q = Z B Z^T, Qtilde = Q Q and Btilde = B diag(n) B.
struct ExpectedMatrices {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd Qtilde;
  Eigen::MatrixXd Btilde;
};

/// Latent positions with <X_i, Y_j> = B(theta_i, theta_j).
struct LatentPositions {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
};

/// Draws labels i.i.d. from categorical(pi). Resamples (up to 100 attempts)
/// until every block is nonempty, then throws std::runtime_error.
CommunityAssignment sample_assignment(const Eigen::VectorXd& pi, Index N, Seed seed);

/// Deterministic assignment with block sizes round(pi * N) (largest-remainder
/// rounding so the sizes sum to N); nodes are laid out block by block.
CommunityAssignment fixed_assignment(const Eigen::VectorXd& pi, Index N);

/// Independent Bernoulli(B[theta_i, theta_j]) edges for ordered pairs
/// (directed) or unordered pairs mirrored (undirected); zero diagonal.
AdjacencyMatrix sample_sbm(const BlockModel& model, const CommunityAssignment& assignment,
                           Seed seed);

DoubledAdjacency doubled_adjacency(const AdjacencyMatrix& A);

ExpectedMatrices expected_matrices(const BlockModel& model,
                                   const CommunityAssignment& assignment);

/// m / (N (N - 1)) for directed graphs, 2m / (N (N - 1)) for undirected ones.
double edge_density(const AdjacencyMatrix& A);
double edge_density(Index N, Index m, bool directed);

/// Expected density sum_ab pi_a pi_b B_ab of a model (ignores the O(1/N)
/// diagonal correction).
double expected_density(const BlockModel& model);

/// B = s * R. Throws when R has negative entries or any product exceeds 1.
Eigen::MatrixXd scaled_block_matrix(double s, const Eigen::MatrixXd& R);

/// Number of singular values above rel_tol * sigma_1.
Index numerical_rank(const Eigen::MatrixXd& M, double rel_tol = 1e-10);

/// X = Z L Lambda^{1/2}, Y = Z R Lambda^{1/2} from the rank-d SVD of B.
LatentPositions latent_positions(const BlockModel& model,
                                 const CommunityAssignment& assignment);

}  // namespace dase::graph
