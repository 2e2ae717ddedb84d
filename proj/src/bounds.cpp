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

#include "dase/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dase::theory {

namespace {

void require_positive(std::initializer_list<double> values) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error("bound constants must be finite and positive");
    }
  }
}

}  // namespace

TConstants t_constants(const graph::CorePeripheryParams& params, const Eigen::Vector2d& pi,
                       double N, bool check_ordering) {
  if (check_ordering) params.validate();
  if (!(N > 0.0)) throw std::invalid_argument("N must be positive");
  if (!(pi.array() > 0.0).all() || std::abs(pi.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("pi must be positive and sum to one");
  }
  const double p = params.p, q = params.q, r = params.r, s = params.s;
  const double n1 = pi[0] * N, n2 = pi[1] * N;
  auto sq = [](double x) { return x * x; };

  TConstants t;
  const double periphery = 1.0 - sq(pi[0] * q * r + pi[1] * s * s);
  t.Ttilde1 = n1 * (1.0 - sq(pi[0] * p * r + pi[1] * r * s)) + n2 * periphery;
  t.Ttilde2 = n1 * (1.0 - sq(pi[0] * p * q + pi[1] * q * s)) + n2 * periphery;
  t.T1 = n1 * (1.0 - r * r) + n2 * (1.0 - s * s);
  t.T2 = n1 * (1.0 - q * q) + n2 * (1.0 - s * s);
  t.T = (sq(t.T1) + sq(t.T2)) / (N * N);
  t.Ttilde = (sq(t.Ttilde1) + sq(t.Ttilde2)) / (N * N);
  return t;
}

double row_separation(const Eigen::MatrixXd& M, Index d) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd root = svd.singularValues().head(d).cwiseSqrt();
  const Eigen::MatrixXd nu = svd.matrixU().leftCols(d) * root.asDiagonal();
  const Eigen::MatrixXd mu = svd.matrixV().leftCols(d) * root.asDiagonal();
  double best = std::numeric_limits<double>::infinity();
  for (Index u = 0; u < M.rows(); ++u) {
    for (Index v = u + 1; v < M.rows(); ++v) {
      const double sep = std::max((nu.row(u) - nu.row(v)).norm(), (mu.row(u) - mu.row(v)).norm());
      best = std::min(best, sep);
    }
  }
  return best;
}

BoundConstants bound_constants_from_model(const graph::BlockModel& model,
                                          const Eigen::VectorXd& sizes) {
  model.validate();
  const Index K = model.K();
  if (sizes.size() != K || !(sizes.array() > 0.0).all()) {
    throw std::invalid_argument("sizes must be positive with one entry per block");
  }
  if (K < 2) throw std::invalid_argument("bound constants need at least two blocks");

  BoundConstants c;
  c.N = sizes.sum();
  c.d = graph::numerical_rank(model.B);
  if (c.d == 0) throw std::domain_error("block matrix is zero");
  const Eigen::MatrixXd Btilde = model.B * sizes.asDiagonal() * model.B;
  if (graph::numerical_rank(Btilde) < c.d) {
    throw std::domain_error("B diag(n) B has lower rank than B");
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(model.B).singularValues();
  const Eigen::VectorXd svt = Eigen::JacobiSVD<Eigen::MatrixXd>(Btilde).singularValues();
  c.b = sv[c.d - 1] / c.N;
  c.btilde = svt[c.d - 1] / c.N;
  c.beta = row_separation(model.B, c.d);
  c.beta_hat = row_separation(Btilde, c.d) / c.N;
  c.pi_min = sizes.minCoeff() / c.N;

  if (K == 2) {
    const auto params = graph::CorePeripheryParams::from_block_matrix(model.B);
    if (params.is_valid()) {
      const TConstants t = t_constants(params, sizes / c.N, c.N);
      c.core_periphery = true;
      c.T = t.T;
      c.Ttilde = t.Ttilde;
      c.T1 = t.T1;
      c.T2 = t.T2;
      c.Ttilde1 = t.Ttilde1;
      c.Ttilde2 = t.Ttilde2;
    }
  }
  return c;
}

double bound_general_dase(const BoundConstants& c, double N, bool directed) {
  require_positive({c.beta_hat, c.btilde, c.pi_min, N});
  const double numerator = directed ? 288.0 : 144.0;
  return numerator * std::log(N) /
         (c.beta_hat * c.beta_hat * std::pow(c.btilde * c.pi_min, 5) * N);
}

double bound_core(const BoundConstants& c, double N, embed::Method method) {
  if (method == embed::Method::dase) {
    require_positive({c.Ttilde, c.beta_hat, c.btilde, c.pi_min, N});
    return 144.0 * c.Ttilde * std::log(N) /
           (c.beta_hat * c.beta_hat * std::pow(c.btilde * c.pi_min, 5) * N);
  }
  if (method == embed::Method::ase) {
    require_positive({c.T, c.beta, c.b, c.pi_min, N});
    return 216.0 * c.T * std::log(N) / (c.beta * c.beta * std::pow(c.b * c.pi_min, 5));
  }
  throw std::invalid_argument("core bounds exist for ASE and DASE only");
}

}  // namespace dase::theory
