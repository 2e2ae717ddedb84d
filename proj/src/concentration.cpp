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

#include "dase/concentration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dase/bounds.hpp"
#include "dase/parallel.hpp"

namespace dase::theory {

namespace {

struct Grams {
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
};

Grams sample_grams(const graph::BlockModel& model, const graph::CommunityAssignment& assignment,
                   Seed seed) {
  const Eigen::MatrixXd A = graph::sample_sbm(model, assignment, seed).dense();
  const Eigen::MatrixXd G = A * A;
  return {G * G.transpose(), G.transpose() * G};
}

}  // namespace

ConcentrationReport concentration_check(const graph::BlockModel& model,
                                        const graph::CommunityAssignment& assignment,
                                        int replicates, Seed seed, int reference_samples) {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (reference_samples < 1) throw std::invalid_argument("reference_samples must be at least 1");
  model.validate();
  const Index N = assignment.N();

  // Reference mean, accumulated in index order so the sum is deterministic.
  const auto ref_count = static_cast<std::size_t>(reference_samples);
  std::vector<Grams> reference(ref_count);
  parallel_for(ref_count, [&](std::size_t i) {
    reference[i] = sample_grams(model, assignment, derive_seed(seed, stream::reference, i));
  });
  Eigen::MatrixXd mean_left = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd mean_right = Eigen::MatrixXd::Zero(N, N);
  for (const auto& g : reference) {
    mean_left += g.left;
    mean_right += g.right;
  }
  mean_left /= static_cast<double>(reference_samples);
  mean_right /= static_cast<double>(reference_samples);
  reference.clear();

  ConcentrationReport r;
  r.replicates = replicates;
  r.reference_samples = reference_samples;
  r.N = static_cast<double>(N);
  const double logN = std::log(r.N);
  r.general_bound = std::sqrt(2.0 * std::pow(r.N, 7) * logN);
  r.core_bound_left = std::numeric_limits<double>::quiet_NaN();
  r.core_bound_right = std::numeric_limits<double>::quiet_NaN();
  if (model.K() == 2) {
    const auto params = graph::CorePeripheryParams::from_block_matrix(model.B);
    if (params.is_valid() && assignment.sizes[0] > 0 && assignment.sizes[1] > 0) {
      const Eigen::Vector2d pi(static_cast<double>(assignment.sizes[0]) / r.N,
                               static_cast<double>(assignment.sizes[1]) / r.N);
      const TConstants t = t_constants(params, pi, r.N);
      const double scale = std::sqrt(2.0) * std::sqrt(std::pow(r.N, 5) * logN);
      r.core_bound_left = scale * t.Ttilde1;
      r.core_bound_right = scale * t.Ttilde2;
    }
  }

  const auto reps = static_cast<std::size_t>(replicates);
  r.deviation_left.assign(reps, 0.0);
  r.deviation_right.assign(reps, 0.0);
  parallel_for(reps, [&](std::size_t i) {
    const Grams g = sample_grams(model, assignment, derive_seed(seed, stream::replicate, i));
    r.deviation_left[i] = (g.left - mean_left).norm();
    r.deviation_right[i] = (g.right - mean_right).norm();
  });
  for (std::size_t i = 0; i < reps; ++i) {
    if (r.deviation_left[i] > r.general_bound) ++r.violations_gram_left;
    if (r.deviation_right[i] > r.general_bound) ++r.violations_gram_right;
    if (r.deviation_left[i] > r.core_bound_left) ++r.core_violations_left;
    if (r.deviation_right[i] > r.core_bound_right) ++r.core_violations_right;
  }
  return r;
}

double two_step_covariance(const Eigen::MatrixXd& Q, Index u, Index v, Index w) {
  const Index n = Q.rows();
  if (Q.cols() != n) throw std::invalid_argument("Q must be square");
  if (u < 0 || v < 0 || w < 0 || u >= n || v >= n || w >= n) {
    throw std::out_of_range("node index out of range");
  }
  double cov = 0.0;
  for (Index l = 0; l < n; ++l) {
    cov += Q(u, l) * Q(v, l) * Q(l, w) * (1.0 - Q(l, w));
  }
  return cov;
}

}  // namespace dase::theory
