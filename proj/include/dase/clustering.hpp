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

#include <string_view>
#include <vector>

#include "dase/labels.hpp"
#include "dase/rng.hpp"

namespace dase::cluster {

using Index = Eigen::Index;

struct KMeansConfig {
  int restarts = 10;
  int max_iters = 300;
  /// Lloyd stops once the relative objective decrease falls below tol.
  double tol = 1e-8;
};

struct KMeansResult {
  ClusterLabels labels;
  Eigen::MatrixXd centroids;  // K x m
  double objective = 0.0;     // sum of squared distances to assigned centroids
  int iterations = 0;         // Lloyd iterations of the winning restart
  int restarts_used = 0;
  /// Objective after each assignment step of the winning restart.
  std::vector<double> objective_trace;
};

/// k-means++ seeding followed by Lloyd iterations, repeated `restarts` times
/// with independent derived seeds; the lowest (objective, restart index) wins.
/// Empty clusters are reseeded with the point farthest from its centroid.
/// Throws std::logic_error if an objective ever increases (beyond rounding).
KMeansResult kmeans(const Eigen::MatrixXd& points, Index K, const KMeansConfig& config,
                    Seed seed);

struct GmmConfig {
  int max_iters = 200;
  double tol = 1e-7;
  /// Added to every covariance diagonal.
  double reg = 1e-6;
  KMeansConfig init{};
};

struct GmmResult {
  ClusterLabels labels;  // MAP assignment
  Eigen::MatrixXd means;  // K x m
  std::vector<Eigen::MatrixXd> covariances;
  Eigen::VectorXd weights;
  double log_likelihood = 0.0;
  int iterations = 0;
  std::vector<double> log_likelihood_trace;
};

/// Full-covariance Gaussian mixture fitted by EM, initialized from k-means.
GmmResult gmm(const Eigen::MatrixXd& points, Index K, const GmmConfig& config, Seed seed);

/// sum_u |points_u - centroids_{labels_u}|^2
double mse_criterion(const Eigen::MatrixXd& points, const ClusterLabels& labels,
                     const Eigen::MatrixXd& centroids);

enum class Clusterer { kmeans, gmm };
std::string_view to_string(Clusterer c);
Clusterer parse_clusterer(std::string_view name);

/// Labels from either clusterer with default settings.
ClusterLabels assign(const Eigen::MatrixXd& points, Index K, Clusterer clusterer, Seed seed);

}  // namespace dase::cluster
