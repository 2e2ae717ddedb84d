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

#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "dase/metrics.hpp"

using namespace dase;
using namespace dase::theory;

namespace {

ClusterLabels L(std::vector<int> v) { return ClusterLabels::from_vector(std::move(v)); }

ClusterLabels random_labels(int n, int K, unsigned seed) {
  std::mt19937 gen(seed);
  std::vector<int> v(n);
  for (auto& x : v) x = static_cast<int>(gen() % K);
  return ClusterLabels{v, K};
}

std::int64_t brute_force_misclustering(const ClusterLabels& truth, const ClusterLabels& est) {
  const int k = std::max(truth.K, est.K);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = static_cast<std::int64_t>(truth.size());
  do {
    std::int64_t wrong = 0;
    for (std::size_t u = 0; u < truth.size(); ++u) wrong += truth.labels[u] != perm[est.labels[u]];
    best = std::min(best, wrong);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("NMI reference values") {
  CHECK(nmi(L({0, 0, 1, 1, 2}), L({0, 0, 1, 1, 2})) == 1.0);
  CHECK(nmi(L({0, 0, 0, 0}), L({0, 1, 0, 1})) == 0.0);
  CHECK(nmi(L({0, 0, 0, 0}), L({1, 1, 1, 1})) == 1.0);
  CHECK(nmi(L({0, 0, 1, 1}), L({0, 1, 0, 1})) == 0.0);
  CHECK(nmi(L({0, 0, 1, 1}), L({1, 1, 0, 0})) == 1.0);
  CHECK_THROWS_AS(nmi(L({0, 1}), L({0, 1, 1})), std::invalid_argument);
}

TEST_CASE("NMI matches a hand computation") {
  // a = (0,0,0,1,1,1), b = (0,0,1,1,1,1): joint counts [[2,1],[0,3]].
  const double n = 6;
  const double mi = (2 / n) * std::log(2 * n / (3 * 2)) + (1 / n) * std::log(1 * n / (3 * 4)) +
                    (3 / n) * std::log(3 * n / (3 * 4));
  const double ha = std::log(2.0);
  const double hb = -(2 / n) * std::log(2 / n) - (4 / n) * std::log(4 / n);
  CHECK(nmi(L({0, 0, 0, 1, 1, 1}), L({0, 0, 1, 1, 1, 1})) ==
        doctest::Approx(mi / std::sqrt(ha * hb)).epsilon(1e-14));
}

TEST_CASE("NMI symmetry and permutation invariance") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto a = random_labels(50, 3, seed);
    const auto b = random_labels(50, 4, seed + 100);
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)).epsilon(1e-14));
    ClusterLabels p = b;
    for (auto& x : p.labels) x = (x + 1) % 4;
    CHECK(nmi(a, p) == doctest::Approx(nmi(a, b)).epsilon(1e-14));
    const double v = nmi(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("misclustering reference values") {
  const auto truth = L({0, 0, 0, 1, 1, 1});
  CHECK(misclustering(truth, truth).count == 0);
  CHECK(misclustering(truth, L({1, 1, 1, 0, 0, 0})).count == 0);
  const auto m = misclustering(truth, L({0, 0, 1, 1, 1, 1}));
  CHECK(m.count == 1);
  CHECK(m.rate == doctest::Approx(1.0 / 6.0));
  CHECK(m.best_perm == std::vector<int>{0, 1});
  CHECK(misclustering(truth, L({1, 1, 1, 0, 0, 0})).best_perm == std::vector<int>{1, 0});
}

TEST_CASE("misclustering equals brute force and is symmetric for equal K") {
  for (unsigned seed = 0; seed < 30; ++seed) {
    const int K = 2 + static_cast<int>(seed % 5);  // up to 6
    const auto a = random_labels(40, K, seed);
    const auto b = random_labels(40, K, seed + 7);
    const auto m = misclustering(a, b);
    CHECK(m.count == brute_force_misclustering(a, b));
    CHECK(m.count == misclustering(b, a).count);
  }
}

TEST_CASE("Hungarian branch agrees with brute force for K = 9") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const auto a = random_labels(60, 9, seed);
    const auto b = random_labels(60, 9, seed + 50);
    CHECK(misclustering(a, b).count == brute_force_misclustering(a, b));
  }
}

TEST_CASE("min-cost assignment") {
  Eigen::Matrix3d cost;
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const auto a = min_cost_assignment(cost);
  double total = 0;
  for (int i = 0; i < 3; ++i) total += cost(i, a[i]);
  CHECK(total == 5.0);
}

TEST_CASE("confusion table") {
  const auto t = confusion(L({0, 0, 1, 2}), L({1, 1, 0, 0}));
  CHECK(t.N == 4);
  CHECK(t.counts(0, 1) == 2);
  CHECK(t.counts(1, 0) == 1);
  CHECK(t.counts(2, 0) == 1);
  CHECK(t.counts.sum() == 4);
}
