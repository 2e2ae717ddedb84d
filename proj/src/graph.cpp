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

#include "dase/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dase::graph {

namespace {

constexpr int kMaxAssignmentAttempts = 100;

void check_pi(const Eigen::VectorXd& pi) {
  if (pi.size() == 0) throw std::invalid_argument("pi must be nonempty");
  for (Index k = 0; k < pi.size(); ++k) {
    if (!(pi[k] > 0.0) || !(pi[k] <= 1.0)) {
      throw std::invalid_argument("pi entries must lie in (0, 1]");
    }
  }
  if (std::abs(pi.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("pi must sum to 1");
  }
}

}  // namespace

BlockModel BlockModel::create(Eigen::MatrixXd B, Eigen::VectorXd pi, bool directed) {
  BlockModel m{std::move(B), std::move(pi), directed};
  m.validate();
  return m;
}

void BlockModel::validate() const {
  if (B.rows() == 0 || B.rows() != B.cols()) {
    throw std::invalid_argument("B must be a nonempty square matrix");
  }
  if (pi.size() != B.rows()) {
    throw std::invalid_argument("pi length must equal the block count");
  }
  for (Index i = 0; i < B.rows(); ++i) {
    for (Index j = 0; j < B.cols(); ++j) {
      if (!(B(i, j) >= 0.0 && B(i, j) <= 1.0)) {
        throw std::invalid_argument("B entries must lie in [0, 1]");
      }
      if (!directed && B(i, j) != B(j, i)) {
        throw std::invalid_argument("undirected models need a symmetric B");
      }
    }
  }
  check_pi(pi);
}

bool CorePeripheryParams::is_valid() const noexcept {
  return 0.0 <= s && s < q && s < r && q < p && r < p && p <= 1.0;
}

void CorePeripheryParams::validate() const {
  if (!is_valid()) {
    throw std::invalid_argument(
        "core-periphery parameters must satisfy 0 <= s < q, r < p <= 1");
  }
}

Eigen::Matrix2d CorePeripheryParams::block_matrix() const {
  Eigen::Matrix2d B;
  B << p, q, r, s;
  return B;
}

CorePeripheryParams CorePeripheryParams::from_block_matrix(const Eigen::MatrixXd& B) {
  if (B.rows() != 2 || B.cols() != 2) {
    throw std::invalid_argument("core-periphery models have exactly two blocks");
  }
  return {B(0, 0), B(0, 1), B(1, 0), B(1, 1)};
}

CommunityAssignment CommunityAssignment::from_labels(std::vector<int> labels, Index K) {
  if (K < 1) throw std::invalid_argument("block count must be positive");
  CommunityAssignment a;
  a.sizes.assign(static_cast<std::size_t>(K), 0);
  for (int l : labels) {
    if (l < 0 || l >= K) throw std::invalid_argument("label outside [0, K)");
    ++a.sizes[static_cast<std::size_t>(l)];
  }
  a.labels = std::move(labels);
  return a;
}

Eigen::MatrixXd CommunityAssignment::indicator() const {
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(N(), K());
  for (Index u = 0; u < N(); ++u) Z(u, labels[static_cast<std::size_t>(u)]) = 1.0;
  return Z;
}

ClusterLabels CommunityAssignment::as_labels() const {
  return ClusterLabels{labels, static_cast<int>(K())};
}

AdjacencyMatrix::AdjacencyMatrix(SparseBinary entries, bool directed)
    : entries_(std::move(entries)), directed_(directed) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("adjacency matrix must be square");
  }
  entries_.prune(0.0);
  entries_.makeCompressed();
  for (Index i = 0; i < entries_.outerSize(); ++i) {
    for (SparseBinary::InnerIterator it(entries_, i); it; ++it) {
      if (it.value() != 1.0) throw std::invalid_argument("adjacency entries must be 0/1");
      if (it.col() == i) throw std::invalid_argument("adjacency diagonal must be zero");
    }
  }
  if (!directed_) {
    SparseBinary t = entries_.transpose();
    if ((t - entries_).norm() != 0.0) {
      throw std::invalid_argument("undirected adjacency must be symmetric");
    }
  }
}

AdjacencyMatrix AdjacencyMatrix::from_edges(
    Index n, const std::vector<std::pair<Index, Index>>& edges, bool directed) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size() * (directed ? 1 : 2));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    triplets.emplace_back(static_cast<int>(u), static_cast<int>(v), 1.0);
    if (!directed) triplets.emplace_back(static_cast<int>(v), static_cast<int>(u), 1.0);
  }
  SparseBinary m(n, n);
  // Duplicates collapse to a single edge.
  m.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double, double) { return 1.0; });
  return AdjacencyMatrix(std::move(m), directed);
}

AdjacencyMatrix AdjacencyMatrix::from_dense(const Eigen::MatrixXd& dense, bool directed) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) > 0.5) triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), 1.0);
    }
  }
  SparseBinary m(dense.rows(), dense.cols());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return AdjacencyMatrix(std::move(m), directed);
}

Index AdjacencyMatrix::edge_count() const {
  return directed_ ? entries_.nonZeros() : entries_.nonZeros() / 2;
}

Eigen::VectorXd AdjacencyMatrix::total_degree() const {
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(size());
  for (Index i = 0; i < entries_.outerSize(); ++i) {
    for (SparseBinary::InnerIterator it(entries_, i); it; ++it) {
      deg[i] += 1.0;
      deg[it.col()] += 1.0;
    }
  }
  return deg;
}

Eigen::MatrixXd DoubledAdjacency::dense() const {
  return Eigen::MatrixXd(entries_.cast<double>());
}

CommunityAssignment sample_assignment(const Eigen::VectorXd& pi, Index N, Seed seed) {
  check_pi(pi);
  const Index K = pi.size();
  if (N < K) throw std::invalid_argument("sample_assignment needs N >= K");

  std::vector<double> cumulative(static_cast<std::size_t>(K));
  std::partial_sum(pi.data(), pi.data() + K, cumulative.begin());
  cumulative.back() = 1.0;

  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAssignmentAttempts; ++attempt) {
    std::vector<int> labels(static_cast<std::size_t>(N));
    for (auto& l : labels) {
      const double u = rng.uniform();
      l = static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                           cumulative.begin());
      l = std::min<int>(l, static_cast<int>(K) - 1);
    }
    auto a = CommunityAssignment::from_labels(std::move(labels), K);
    if (std::all_of(a.sizes.begin(), a.sizes.end(), [](Index n) { return n > 0; })) {
      return a;
    }
  }
  throw std::runtime_error("sample_assignment: a block stayed empty after " +
                           std::to_string(kMaxAssignmentAttempts) + " attempts");
}

CommunityAssignment fixed_assignment(const Eigen::VectorXd& pi, Index N) {
  check_pi(pi);
  const Index K = pi.size();
  if (N < K) throw std::invalid_argument("fixed_assignment needs N >= K");
  std::vector<Index> sizes(static_cast<std::size_t>(K));
  std::vector<std::pair<double, Index>> remainders;
  Index assigned = 0;
  for (Index k = 0; k < K; ++k) {
    const double exact = pi[k] * static_cast<double>(N);
    sizes[static_cast<std::size_t>(k)] = static_cast<Index>(std::floor(exact));
    assigned += sizes[static_cast<std::size_t>(k)];
    remainders.emplace_back(exact - std::floor(exact), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (Index i = 0; assigned < N; ++i, ++assigned) {
    ++sizes[static_cast<std::size_t>(remainders[static_cast<std::size_t>(i % K)].second)];
  }
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(N));
  for (Index k = 0; k < K; ++k) {
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(k)]),
                  static_cast<int>(k));
  }
  return CommunityAssignment::from_labels(std::move(labels), K);
}

AdjacencyMatrix sample_sbm(const BlockModel& model, const CommunityAssignment& assignment,
                           Seed seed) {
  model.validate();
  if (assignment.K() != model.K()) {
    throw std::invalid_argument("assignment and model disagree on the block count");
  }
  const Index N = assignment.N();
  const auto& labels = assignment.labels;
  Rng rng(seed);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(
      expected_density(model) * static_cast<double>(N) * static_cast<double>(N) * 1.1 + 16));
  for (Index i = 0; i < N; ++i) {
    const auto row = model.B.row(labels[static_cast<std::size_t>(i)]);
    const Index start = model.directed ? 0 : i + 1;
    for (Index j = start; j < N; ++j) {
      if (j == i) continue;
      if (rng.uniform() < row[labels[static_cast<std::size_t>(j)]]) {
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), 1.0);
        if (!model.directed) triplets.emplace_back(static_cast<int>(j), static_cast<int>(i), 1.0);
      }
    }
  }
  SparseBinary m(N, N);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return AdjacencyMatrix(std::move(m), model.directed);
}

DoubledAdjacency doubled_adjacency(const AdjacencyMatrix& A) {
  const SparseCount a = A.matrix().cast<std::int64_t>();
  SparseCount product = (a * a).pruned();
  product.makeCompressed();
  return DoubledAdjacency(std::move(product), A.directed());
}

ExpectedMatrices expected_matrices(const BlockModel& model,
                                   const CommunityAssignment& assignment) {
  if (assignment.K() != model.K()) {
    throw std::invalid_argument("assignment and model disagree on the block count");
  }
  Eigen::VectorXd n(model.K());
  for (Index k = 0; k < model.K(); ++k) {
    n[k] = static_cast<double>(assignment.sizes[static_cast<std::size_t>(k)]);
  }
  const Eigen::MatrixXd Z = assignment.indicator();
  ExpectedMatrices out;
  out.Btilde = model.B * n.asDiagonal() * model.B;
  out.Q = Z * model.B * Z.transpose();
  out.Qtilde = Z * out.Btilde * Z.transpose();
  return out;
}

double edge_density(Index N, Index m, bool directed) {
  if (N < 2) throw std::invalid_argument("edge density needs at least two nodes");
  const double pairs = static_cast<double>(N) * static_cast<double>(N - 1);
  return (directed ? 1.0 : 2.0) * static_cast<double>(m) / pairs;
}

double edge_density(const AdjacencyMatrix& A) {
  return edge_density(A.size(), A.edge_count(), A.directed());
}

double expected_density(const BlockModel& model) {
  return model.pi.dot(model.B * model.pi);
}

Eigen::MatrixXd scaled_block_matrix(double s, const Eigen::MatrixXd& R) {
  if (s < 0.0) throw std::invalid_argument("density scale must be nonnegative");
  if ((R.array() < 0.0).any()) throw std::invalid_argument("ratio matrix must be nonnegative");
  Eigen::MatrixXd B = s * R;
  if ((B.array() > 1.0).any()) {
    throw std::invalid_argument("s * R has an entry above 1");
  }
  return B;
}

Index numerical_rank(const Eigen::MatrixXd& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  return (sv.array() > rel_tol * sv[0]).count();
}

LatentPositions latent_positions(const BlockModel& model,
                                 const CommunityAssignment& assignment) {
  if (assignment.K() != model.K()) {
    throw std::invalid_argument("assignment and model disagree on the block count");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(model.B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index d = numerical_rank(model.B);
  const Eigen::VectorXd root = svd.singularValues().head(d).cwiseSqrt();
  const Eigen::MatrixXd nu = svd.matrixU().leftCols(d) * root.asDiagonal();
  const Eigen::MatrixXd mu = svd.matrixV().leftCols(d) * root.asDiagonal();
  const double err = (nu * mu.transpose() - model.B).cwiseAbs().maxCoeff();
  if (err > 1e-10) {
    throw std::runtime_error("block matrix is too close to rank deficient to factor");
  }
  const Eigen::MatrixXd Z = assignment.indicator();
  return {Z * nu, Z * mu};
}

}  // namespace dase::graph
