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

#include "dase/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dase::theory {

namespace {

double entropy(const Eigen::VectorXd& counts, double n) {
  double h = 0.0;
  for (Index i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0.0) {
      const double p = counts[i] / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

// Same partition up to relabeling: every nonempty row and column of the
// table has exactly one nonzero cell.
bool identical_partitions(const ConfusionTable& t) {
  for (Index i = 0; i < t.counts.rows(); ++i) {
    if ((t.counts.row(i).array() > 0).count() > 1) return false;
  }
  for (Index j = 0; j < t.counts.cols(); ++j) {
    if ((t.counts.col(j).array() > 0).count() > 1) return false;
  }
  return true;
}

}  // namespace

ConfusionTable confusion(const ClusterLabels& a, const ClusterLabels& b) {
  if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
  a.validate();
  b.validate();
  ConfusionTable t;
  t.counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.K, b.K);
  for (std::size_t u = 0; u < a.size(); ++u) ++t.counts(a.labels[u], b.labels[u]);
  t.N = static_cast<std::int64_t>(a.size());
  return t;
}

double nmi(const ClusterLabels& a, const ClusterLabels& b) {
  const ConfusionTable t = confusion(a, b);
  if (t.N == 0) throw std::invalid_argument("nmi of empty labelings");
  const double n = static_cast<double>(t.N);
  const Eigen::MatrixXd joint = t.counts.cast<double>();
  const Eigen::VectorXd ra = joint.rowwise().sum();
  const Eigen::VectorXd rb = joint.colwise().sum().transpose();
  const double ha = entropy(ra, n);
  const double hb = entropy(rb, n);
  if (ha <= 0.0 || hb <= 0.0) return identical_partitions(t) ? 1.0 : 0.0;

  double mi = 0.0;
  for (Index i = 0; i < joint.rows(); ++i) {
    for (Index j = 0; j < joint.cols(); ++j) {
      const double c = joint(i, j);
      if (c > 0.0) mi += (c / n) * std::log(c * n / (ra[i] * rb[j]));
    }
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  // Shortest augmenting path formulation with potentials, O(n^3).
  const Index n = cost.rows();
  if (cost.cols() != n) throw std::invalid_argument("cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0), v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Index> p(static_cast<std::size_t>(n + 1), 0), way(static_cast<std::size_t>(n + 1), 0);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const Index i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (used[js]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[js];
        if (cur < minv[js]) {
          minv[js] = cur;
          way[js] = j0;
        }
        if (minv[js] < delta) {
          delta = minv[js];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (used[js]) {
          u[static_cast<std::size_t>(p[js])] += delta;
          v[js] -= delta;
        } else {
          minv[js] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (Index j = 1; j <= n; ++j) {
    assignment[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = static_cast<int>(j - 1);
  }
  return assignment;
}

Misclustering misclustering(const ClusterLabels& truth, const ClusterLabels& est) {
  const ConfusionTable t = confusion(est, truth);  // rows: estimate, cols: truth
  const Index k = std::max<Index>(t.counts.rows(), t.counts.cols());
  Eigen::MatrixXd agree = Eigen::MatrixXd::Zero(k, k);
  agree.topLeftCorner(t.counts.rows(), t.counts.cols()) = t.counts.cast<double>();

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  if (k <= 8) {
    double best_agree = -1.0;
    do {
      double s = 0.0;
      for (Index i = 0; i < k; ++i) s += agree(i, perm[static_cast<std::size_t>(i)]);
      if (s > best_agree) {
        best_agree = s;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    best = min_cost_assignment(-agree);
  }

  Misclustering m;
  double matched = 0.0;
  for (Index i = 0; i < k; ++i) matched += agree(i, best[static_cast<std::size_t>(i)]);
  m.count = t.N - static_cast<std::int64_t>(std::llround(matched));
  m.rate = t.N > 0 ? static_cast<double>(m.count) / static_cast<double>(t.N) : 0.0;
  m.best_perm.assign(static_cast<std::size_t>(est.K), -1);
  for (Index i = 0; i < est.K; ++i) {
    const int target = best[static_cast<std::size_t>(i)];
    m.best_perm[static_cast<std::size_t>(i)] = target < truth.K ? target : -1;
  }
  return m;
}

}  // namespace dase::theory
