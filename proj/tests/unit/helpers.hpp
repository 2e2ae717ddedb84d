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

#include <random>
#include <utility>
#include <vector>

#include "dase/graph.hpp"

namespace testutil {

/// Random 0/1 adjacency with zero diagonal drawn with std::mt19937 so the
/// oracles never share code with the library sampler.
inline Eigen::MatrixXd random_adjacency(int n, double p, bool directed, unsigned seed) {
  std::mt19937 gen(seed);
  std::bernoulli_distribution coin(p);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (coin(gen)) {
        A(i, j) = 1.0;
        if (!directed) A(j, i) = 1.0;
      }
    }
  }
  return A;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = normal(gen);
  return M;
}

inline Eigen::MatrixXd random_probabilities(int K, bool symmetric, unsigned seed, double lo = 0.05,
                                            double hi = 0.95) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd B(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) B(i, j) = u(gen);
  if (symmetric) B = ((B + B.transpose()) / 2.0).eval();
  return B;
}

/// Largest principal angle (radians) between the column spans of X and Y,
/// both with orthonormal columns.
inline double max_principal_angle(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  const Eigen::VectorXd cosines = Eigen::JacobiSVD<Eigen::MatrixXd>(X.transpose() * Y).singularValues();
  return std::acos(std::min(1.0, cosines.minCoeff()));
}

/// Sorted-pair partition check: two labelings describe the same partition.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace testutil
