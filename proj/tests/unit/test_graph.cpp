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

#include <cmath>

#include "dase/graph.hpp"
#include "helpers.hpp"

using namespace dase;
using namespace dase::graph;

namespace {

Eigen::MatrixXd walk_count_oracle(const Eigen::MatrixXd& A) {
  const auto n = A.rows();
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) W(i, j) += A(i, k) * A(k, j);
  return W;
}

Eigen::MatrixXd cp_matrix(double p, double q, double r, double s) {
  Eigen::MatrixXd B(2, 2);
  B << p, q, r, s;
  return B;
}

}  // namespace

TEST_CASE("block model validation") {
  CHECK_NOTHROW(BlockModel::create(cp_matrix(0.5, 0.3, 0.2, 0.1), Eigen::Vector2d(0.4, 0.6), true));
  CHECK_THROWS_AS(BlockModel::create(cp_matrix(0.5, 0.3, 0.2, 0.1), Eigen::Vector2d(0.4, 0.6), false),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlockModel::create(cp_matrix(1.5, 0.3, 0.3, 0.1), Eigen::Vector2d(0.5, 0.5), true),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlockModel::create(cp_matrix(0.5, 0.3, 0.3, 0.1), Eigen::Vector2d(0.5, 0.4), true),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlockModel::create(cp_matrix(0.5, 0.3, 0.3, 0.1), Eigen::Vector2d(1.0, 0.0), true),
                  std::invalid_argument);
}

TEST_CASE("core-periphery ordering") {
  CHECK(CorePeripheryParams{0.08, 0.048, 0.048, 0.024}.is_valid());
  CHECK_FALSE(CorePeripheryParams{0.08, 0.09, 0.048, 0.024}.is_valid());
  CHECK_FALSE(CorePeripheryParams{0.08, 0.048, 0.048, 0.048}.is_valid());
  CHECK_THROWS(CorePeripheryParams{0.1, 0.1, 0.1, 0.1}.validate());
  const auto B = CorePeripheryParams{0.8, 0.5, 0.4, 0.2}.block_matrix();
  CHECK(B(0, 1) == 0.5);
  CHECK(B(1, 0) == 0.4);
}

TEST_CASE("sample_assignment") {
  SUBCASE("single block") {
    const auto a = sample_assignment(Eigen::VectorXd::Ones(1), 5, 1);
    CHECK(a.sizes == std::vector<Index>{5});
    for (int l : a.labels) CHECK(l == 0);
  }
  SUBCASE("balanced proportions stay within 0.02 at N = 10000") {
    for (Seed seed = 0; seed < 20; ++seed) {
      const auto a = sample_assignment(Eigen::Vector2d(0.5, 0.5), 10000, seed);
      CHECK(std::abs(static_cast<double>(a.sizes[0]) / 10000.0 - 0.5) < 0.02);
    }
  }
  SUBCASE("unbalanced sizes fall in the binomial 3 sigma band") {
    const double sd = std::sqrt(1000 * 0.9 * 0.1);
    for (Seed seed = 0; seed < 5; ++seed) {
      const auto a = sample_assignment(Eigen::Vector2d(0.9, 0.1), 1000, seed);
      CHECK(std::abs(static_cast<double>(a.sizes[0]) - 900.0) <= 3 * sd);
      CHECK(a.sizes[0] + a.sizes[1] == 1000);
    }
  }
  SUBCASE("determinism and errors") {
    const auto a = sample_assignment(Eigen::Vector3d(0.2, 0.3, 0.5), 50, 9);
    const auto b = sample_assignment(Eigen::Vector3d(0.2, 0.3, 0.5), 50, 9);
    CHECK(a.labels == b.labels);
    CHECK_THROWS_AS(sample_assignment(Eigen::Vector3d(0.2, 0.3, 0.5), 2, 9), std::invalid_argument);
    CHECK_THROWS_AS(sample_assignment(Eigen::Vector2d(1.0 - 1e-9, 1e-9), 3, 9), std::runtime_error);
  }
}

TEST_CASE("fixed_assignment uses largest remainders") {
  const auto a = fixed_assignment(Eigen::Vector3d(1.0 / 3, 1.0 / 3, 1.0 / 3), 10);
  CHECK(a.sizes[0] + a.sizes[1] + a.sizes[2] == 10);
  const auto b = fixed_assignment(Eigen::Vector2d(0.5, 0.5), 1000);
  CHECK(b.sizes == std::vector<Index>{500, 500});
  CHECK(b.labels[499] == 0);
  CHECK(b.labels[500] == 1);
}

TEST_CASE("sample_sbm degenerate and structural properties") {
  const auto assignment = fixed_assignment(Eigen::Vector2d(0.5, 0.5), 40);
  SUBCASE("all zeros gives the empty graph") {
    const auto A = sample_sbm(BlockModel::create(Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(0.5, 0.5), true),
                              assignment, 1);
    CHECK(A.edge_count() == 0);
    CHECK(edge_density(A) == 0.0);
  }
  SUBCASE("all ones gives the complete graph without loops") {
    for (bool directed : {true, false}) {
      const auto A = sample_sbm(BlockModel::create(Eigen::MatrixXd::Ones(2, 2), Eigen::Vector2d(0.5, 0.5), directed),
                                assignment, 1);
      CHECK(edge_density(A) == 1.0);
      CHECK(A.dense().diagonal().isZero());
    }
  }
  SUBCASE("undirected samples are symmetric, directed ones are not") {
    const Eigen::MatrixXd B = cp_matrix(0.5, 0.3, 0.3, 0.1);
    const auto U = sample_sbm(BlockModel::create(B, Eigen::Vector2d(0.5, 0.5), false), assignment, 2).dense();
    CHECK(U == U.transpose());
    CHECK(U.diagonal().isZero());
    const auto D = sample_sbm(BlockModel::create(B, Eigen::Vector2d(0.5, 0.5), true), assignment, 2).dense();
    CHECK_FALSE(D == D.transpose());
    CHECK(D.diagonal().isZero());
  }
  SUBCASE("identical seeds reproduce the graph") {
    const auto model = BlockModel::create(cp_matrix(0.5, 0.3, 0.3, 0.1), Eigen::Vector2d(0.5, 0.5), true);
    CHECK(sample_sbm(model, assignment, 5).dense() == sample_sbm(model, assignment, 5).dense());
    CHECK_FALSE(sample_sbm(model, assignment, 5).dense() == sample_sbm(model, assignment, 6).dense());
  }
  SUBCASE("model and assignment must agree on K") {
    const auto model = BlockModel::create(Eigen::MatrixXd::Constant(3, 3, 0.2), Eigen::Vector3d(0.3, 0.3, 0.4), true);
    CHECK_THROWS_AS(sample_sbm(model, assignment, 1), std::invalid_argument);
  }
}

TEST_CASE("sampled density matches the model within 4 sigma") {
  const Eigen::MatrixXd B = scaled_block_matrix(0.05, cp_matrix(1, 0.6, 0.6, 0.3));
  const auto model = BlockModel::create(B, Eigen::Vector2d(0.5, 0.5), true);
  const auto assignment = fixed_assignment(model.pi, 1000);
  // Exact mean and variance of the arc count given the block sizes.
  double mean = 0.0, var = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pairs = static_cast<double>(assignment.sizes[a]) *
                           static_cast<double>(assignment.sizes[b] - (a == b ? 1 : 0));
      mean += pairs * B(a, b);
      var += pairs * B(a, b) * (1 - B(a, b));
    }
  }
  CHECK(std::abs(mean / (1000.0 * 999.0) - 0.03125) < 1e-4);
  for (Seed seed = 0; seed < 5; ++seed) {
    const auto A = sample_sbm(model, assignment, seed);
    CHECK(std::abs(static_cast<double>(A.edge_count()) - mean) < 4 * std::sqrt(var));
  }
}

TEST_CASE("entrywise mean of A tracks Q over 200 replicates") {
  const Eigen::MatrixXd B = cp_matrix(0.3, 0.2, 0.2, 0.1);
  const auto model = BlockModel::create(B, Eigen::Vector2d(0.4, 0.6), true);
  const auto assignment = fixed_assignment(model.pi, 300);
  const Eigen::MatrixXd Q = expected_matrices(model, assignment).Q;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(300, 300);
  const int R = 200;
  for (int r = 0; r < R; ++r) sum += sample_sbm(model, assignment, 1000 + r).dense();
  const Eigen::MatrixXd mean = sum / R;
  int within = 0, total = 0;
  for (Index i = 0; i < 300; ++i) {
    for (Index j = 0; j < 300; ++j) {
      if (i == j) continue;
      ++total;
      const double se = std::sqrt(Q(i, j) * (1 - Q(i, j)) / R);
      if (std::abs(mean(i, j) - Q(i, j)) < 5 * se) ++within;
    }
  }
  CHECK(static_cast<double>(within) >= 0.99 * total);
}

TEST_CASE("doubled adjacency") {
  SUBCASE("zero matrix") {
    const auto A = AdjacencyMatrix::from_dense(Eigen::MatrixXd::Zero(4, 4), true);
    CHECK(doubled_adjacency(A).dense().isZero());
  }
  SUBCASE("directed path 0 -> 1 -> 2") {
    const auto A = AdjacencyMatrix::from_edges(3, {{0, 1}, {1, 2}}, true);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
    expected(0, 2) = 1;
    CHECK(doubled_adjacency(A).dense() == expected);
  }
  SUBCASE("matches the triple-loop walk count") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      for (bool directed : {true, false}) {
        const Eigen::MatrixXd dense = testutil::random_adjacency(30, 0.2, directed, seed);
        const auto Atilde = doubled_adjacency(AdjacencyMatrix::from_dense(dense, directed));
        CHECK(Atilde.dense() == walk_count_oracle(dense));
        CHECK(Atilde.dense().maxCoeff() <= 30);
      }
    }
  }
}

TEST_CASE("adjacency construction") {
  const auto A = AdjacencyMatrix::from_edges(4, {{0, 1}, {0, 1}, {2, 3}}, false);
  CHECK(A.edge_count() == 2);
  CHECK(A.dense()(1, 0) == 1.0);
  CHECK_THROWS_AS(AdjacencyMatrix::from_edges(3, {{1, 1}}, true), std::invalid_argument);
  CHECK_THROWS_AS(AdjacencyMatrix::from_edges(3, {{0, 3}}, true), std::invalid_argument);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(AdjacencyMatrix::from_dense(asym, false), std::invalid_argument);
  CHECK(A.total_degree().sum() == 8.0);
}

TEST_CASE("expected matrices") {
  SUBCASE("core-periphery blocks of Qtilde") {
    const double p = 0.8, q = 0.5, r = 0.4, s = 0.2;
    const auto model = BlockModel::create(cp_matrix(p, q, r, s), Eigen::Vector2d(0.3, 0.7), true);
    const auto assignment = fixed_assignment(model.pi, 20);
    const double n1 = 6, n2 = 14;
    const auto E = expected_matrices(model, assignment);
    CHECK(E.Qtilde(0, 1) == doctest::Approx(n1 * p * p + n2 * q * r).epsilon(1e-12));
    CHECK(E.Qtilde(0, 19) == doctest::Approx(n1 * p * q + n2 * q * s).epsilon(1e-12));
    CHECK(E.Qtilde(19, 0) == doctest::Approx(n1 * p * r + n2 * r * s).epsilon(1e-12));
    CHECK(E.Qtilde(18, 19) == doctest::Approx(n1 * q * r + n2 * s * s).epsilon(1e-12));
  }
  SUBCASE("single block") {
    const auto model = BlockModel::create(Eigen::MatrixXd::Constant(1, 1, 0.3), Eigen::VectorXd::Ones(1), true);
    const auto E = expected_matrices(model, fixed_assignment(model.pi, 6));
    CHECK((E.Q.array() == 0.3).all());
  }
  SUBCASE("random model against the dense product") {
    for (unsigned seed = 0; seed < 5; ++seed) {
      const Eigen::MatrixXd B = testutil::random_probabilities(3, false, seed);
      const auto model = BlockModel::create(B, Eigen::Vector3d(0.2, 0.3, 0.5), true);
      const auto assignment = sample_assignment(model.pi, 20, seed);
      const auto E = expected_matrices(model, assignment);
      Eigen::MatrixXd Q(20, 20);
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) Q(i, j) = B(assignment.labels[i], assignment.labels[j]);
      CHECK((E.Q - Q).cwiseAbs().maxCoeff() == 0.0);
      CHECK((E.Qtilde - Q * Q).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::Vector3d n;
      for (int k = 0; k < 3; ++k) n[k] = static_cast<double>(assignment.sizes[k]);
      CHECK((E.Btilde - B * n.asDiagonal() * B).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(numerical_rank(E.Q) <= numerical_rank(B));
    }
  }
}

TEST_CASE("edge density") {
  const auto complete = AdjacencyMatrix::from_dense(Eigen::MatrixXd::Ones(5, 5) - Eigen::MatrixXd::Identity(5, 5), true);
  CHECK(edge_density(complete) == 1.0);
  CHECK(edge_density(205, 2757, true) == doctest::Approx(0.0659).epsilon(0.0015));
  CHECK(std::abs(edge_density(15439, 801748, true) - 0.0034) < 1e-4);
  CHECK_THROWS_AS(edge_density(1, 0, true), std::invalid_argument);
}

TEST_CASE("expected density equals the two-block formula") {
  const double p = 0.8, q = 0.48, r = 0.48, s = 0.24;
  for (double pi1 : {0.1, 0.5, 0.9}) {
    const double pi2 = 1 - pi1;
    const auto model = BlockModel::create(cp_matrix(p, q, r, s), Eigen::Vector2d(pi1, pi2), true);
    CHECK(expected_density(model) ==
          doctest::Approx(pi1 * pi1 * p + pi1 * pi2 * q + pi1 * pi2 * r + pi2 * pi2 * s));
  }
}

TEST_CASE("scaled block matrix") {
  const Eigen::MatrixXd R = cp_matrix(1, 0.6, 0.6, 0.3);
  CHECK(scaled_block_matrix(0.05, R).isApprox(cp_matrix(0.05, 0.03, 0.03, 0.015)));
  CHECK(scaled_block_matrix(0.0, R).isZero());
  CHECK(scaled_block_matrix(0.08, R).isApprox(cp_matrix(0.08, 0.048, 0.048, 0.024)));
  CHECK_THROWS_AS(scaled_block_matrix(1.5, R), std::invalid_argument);
}

TEST_CASE("latent positions reproduce block probabilities") {
  auto check = [](const Eigen::MatrixXd& B, const Eigen::VectorXd& pi, Index N) {
    const auto model = BlockModel::create(B, pi, true);
    const auto assignment = fixed_assignment(pi, N);
    const auto L = latent_positions(model, assignment);
    const Eigen::MatrixXd Q = expected_matrices(model, assignment).Q;
    CHECK((L.X * L.Y.transpose() - Q).cwiseAbs().maxCoeff() < 1e-10);
  };
  check(Eigen::MatrixXd::Constant(1, 1, 0.25), Eigen::VectorXd::Ones(1), 5);
  check(cp_matrix(0.8, 0.48, 0.48, 0.24), Eigen::Vector2d(0.5, 0.5), 10);
  // Rank-2 B with three blocks.
  const Eigen::MatrixXd u = (Eigen::MatrixXd(3, 2) << 0.5, 0.1, 0.3, 0.4, 0.2, 0.2).finished();
  const Eigen::MatrixXd v = (Eigen::MatrixXd(3, 2) << 0.6, 0.2, 0.3, 0.5, 0.4, 0.1).finished();
  const Eigen::MatrixXd B = u * v.transpose();
  CHECK(numerical_rank(B) == 2);
  check(B, Eigen::Vector3d(0.3, 0.3, 0.4), 12);
}
