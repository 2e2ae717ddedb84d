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

// Closed-form misclustering bounds for DASE and ASE and the model constants
// that feed them.

#include <Eigen/Dense>

#include "dase/embedding.hpp"
#include "dase/graph.hpp"

namespace dase::theory {

using Index = Eigen::Index;

struct TConstants {
  double T1 = 0.0;
  double T2 = 0.0;
  double T = 0.0;  // (T1^2 + T2^2) / N^2
  double Ttilde1 = 0.0;
  double Ttilde2 = 0.0;
  double Ttilde = 0.0;  // (Ttilde1^2 + Ttilde2^2) / N^2
};

/// Core-periphery variance constants with block sizes n_i = pi_i N:
///   Ttilde1 = n1 (1 - (pi1 p r + pi2 r s)^2) + n2 (1 - (pi1 q r + pi2 s^2)^2)
///   Ttilde2 = n1 (1 - (pi1 p q + pi2 q s)^2) + n2 (1 - (pi1 q r + pi2 s^2)^2)
///   T1 = n1 (1 - r^2) + n2 (1 - s^2),  T2 = n1 (1 - q^2) + n2 (1 - s^2).
/// check_ordering = false skips the core-periphery ordering check.
TConstants t_constants(const graph::CorePeripheryParams& params, const Eigen::Vector2d& pi,
                       double N, bool check_ordering = true);

struct BoundConstants {
  double N = 0.0;
  Index d = 0;
  double b = 0.0;         // sigma_d(B) / N
  double btilde = 0.0;    // sigma_d(B diag(n) B) / N
  double beta = 0.0;      // row separation of the B factorization
  double beta_hat = 0.0;  // row separation of the Btilde factorization over N
  double pi_min = 0.0;    // min n / N
  bool core_periphery = false;
  double T = 0.0;
  double Ttilde = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;
  double Ttilde1 = 0.0;
  double Ttilde2 = 0.0;
};

/// Row separation min_{u != v} max(|nu_u - nu_v|, |mu_u - mu_v|) of the
/// factorization M = nu mu^T with nu = L Lambda^{1/2}, mu = R Lambda^{1/2}.
double row_separation(const Eigen::MatrixXd& M, Index d);

/// Throws std::domain_error when B diag(n) B loses rank relative to B. The T
/// fields are filled only for valid two-block core-periphery models.
BoundConstants bound_constants_from_model(const graph::BlockModel& model,
                                          const Eigen::VectorXd& sizes);

/// 288 log N / (beta_hat^2 (btilde pi_min)^5 N) for directed graphs, half of
/// that for undirected ones.
double bound_general_dase(const BoundConstants& c, double N, bool directed);

/// DASE: 144 Ttilde log N / (beta_hat^2 (btilde pi_min)^5 N).
/// ASE:  216 T log N / (beta^2 (b pi_min)^5).
double bound_core(const BoundConstants& c, double N, embed::Method method);

}  // namespace dase::theory
