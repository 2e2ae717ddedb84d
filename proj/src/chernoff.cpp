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

#include "dase/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dase::theory {

namespace {

constexpr int kGridPoints = 64;
constexpr double kTolT = 1e-8;

}  // namespace

void ChernoffInputs::validate() const {
  const Index K = M.rows();
  if (K < 1 || M.cols() != K || C.rows() != K || C.cols() != K || pi.size() != K) {
    throw std::invalid_argument("Chernoff inputs must be K x K with a length-K pi");
  }
  if (!(C.array() > 0.0).all()) {
    throw std::domain_error("block variances must be strictly positive");
  }
  if (!(pi.array() > 0.0).all() || (K > 1 && !(pi.array() < 1.0).all()) ||
      std::abs(pi.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("block proportions must lie in (0, 1) and sum to 1");
  }
}

ChernoffInputs ase_block_moments(const Eigen::MatrixXd& B, const Eigen::VectorXd& pi) {
  if (((B.array() <= 0.0) || (B.array() >= 1.0)).any()) {
    throw std::domain_error("ASE block variance vanishes for probabilities 0 or 1");
  }
  ChernoffInputs in{B, B.array() * (1.0 - B.array()), pi};
  in.validate();
  return in;
}

ChernoffInputs dase_block_moments(const Eigen::MatrixXd& B, const Eigen::VectorXd& sizes) {
  const Index K = B.rows();
  if (B.cols() != K || sizes.size() != K) {
    throw std::invalid_argument("B must be K x K and sizes length K");
  }
  if (!(sizes.array() > 0.0).all()) throw std::invalid_argument("block sizes must be positive");
  ChernoffInputs in;
  in.M = Eigen::MatrixXd::Zero(K, K);
  in.C = Eigen::MatrixXd::Zero(K, K);
  for (Index a = 0; a < K; ++a) {
    for (Index b = 0; b < K; ++b) {
      for (Index c = 0; c < K; ++c) {
        const double walk = B(a, c) * B(c, b);
        in.M(a, b) += sizes[c] * walk;
        in.C(a, b) += sizes[c] * walk * (1.0 - walk);
      }
    }
  }
  in.pi = sizes / sizes.sum();
  return in;
}

ChernoffInputs dase_block_moments(const graph::BlockModel& model, const Eigen::VectorXd& sizes) {
  model.validate();
  return dase_block_moments(model.B, sizes);
}

ChernoffInputs empirical_block_moments(const graph::AdjacencyMatrix& A,
                                       const ClusterLabels& labels, bool doubled) {
  const Index n = A.size();
  if (static_cast<Index>(labels.size()) != n) {
    throw std::invalid_argument("labels must cover every node");
  }
  labels.validate();
  const Index K = labels.K;
  const auto counts = labels.counts();

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(K, K);
  Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(K, K);
  const auto& m = A.matrix();

  if (!doubled) {
    for (Index u = 0; u < n; ++u) {
      const int a = labels.labels[static_cast<std::size_t>(u)];
      for (graph::SparseBinary::InnerIterator it(m, u); it; ++it) {
        const int b = labels.labels[static_cast<std::size_t>(it.col())];
        sum(a, b) += 1.0;
        sumsq(a, b) += 1.0;
      }
    }
  } else {
    // One row of A*A at a time through a dense accumulator.
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    std::vector<Index> touched;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Index u = 0; u < n; ++u) {
      const int a = labels.labels[static_cast<std::size_t>(u)];
      for (graph::SparseBinary::InnerIterator it(m, u); it; ++it) {
        for (graph::SparseBinary::InnerIterator jt(m, it.col()); jt; ++jt) {
          const Index v = jt.col();
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            touched.push_back(v);
          }
          row[v] += 1.0;
        }
      }
      for (Index v : touched) {
        if (v != u) {
          const int b = labels.labels[static_cast<std::size_t>(v)];
          sum(a, b) += row[v];
          sumsq(a, b) += row[v] * row[v];
        }
        row[v] = 0.0;
        seen[static_cast<std::size_t>(v)] = 0;
      }
      touched.clear();
    }
  }

  ChernoffInputs in;
  in.M.resize(K, K);
  in.C.resize(K, K);
  in.pi.resize(K);
  for (Index a = 0; a < K; ++a) {
    in.pi[a] = static_cast<double>(counts[static_cast<std::size_t>(a)]) / static_cast<double>(n);
    for (Index b = 0; b < K; ++b) {
      const double na = static_cast<double>(counts[static_cast<std::size_t>(a)]);
      const double nb = static_cast<double>(counts[static_cast<std::size_t>(b)]);
      const double pairs = a == b ? na * (na - 1.0) : na * nb;
      if (pairs <= 0.0) throw std::domain_error("a block has too few nodes for moments");
      const double mean = sum(a, b) / pairs;
      in.M(a, b) = mean;
      in.C(a, b) = std::max(0.0, sumsq(a, b) / pairs - mean * mean);
    }
  }
  return in;
}

ChernoffPair chernoff_pair(const ChernoffInputs& in, Index k, Index l) {
  in.validate();
  const Index K = in.K();
  if (k < 0 || l < 0 || k >= K || l >= K || k == l) {
    throw std::invalid_argument("chernoff_pair needs two distinct block indices");
  }
  // e^T M and M e for e = e_k - e_l.
  const Eigen::VectorXd left = (in.M.row(k) - in.M.row(l)).transpose();
  const Eigen::VectorXd right = in.M.col(k) - in.M.col(l);
  const Eigen::VectorXd weighted = left.cwiseProduct(in.pi).cwiseProduct(right);
  const Eigen::VectorXd ck = in.C.row(k).transpose();
  const Eigen::VectorXd cl = in.C.row(l).transpose();

  auto f = [&](double t) {
    const Eigen::VectorXd s = (1.0 - t) * ck + t * cl;
    return 0.5 * t * (1.0 - t) * weighted.cwiseQuotient(s).sum();
  };

  double best_t = 0.5;
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 1; i <= kGridPoints; ++i) {
    const double t = static_cast<double>(i) / (kGridPoints + 1);
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
      best_i = i;
    }
  }

  double lo = static_cast<double>(best_i - 1) / (kGridPoints + 1);
  double hi = static_cast<double>(best_i + 1) / (kGridPoints + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kTolT) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double t_star = 0.5 * (lo + hi);
  const double refined = f(t_star);
  if (refined >= best) {
    best = refined;
    best_t = t_star;
  }
  if (best <= 0.0) return {0.0, best_t};
  return {best, best_t};
}

double chernoff_information(const ChernoffInputs& in) {
  in.validate();
  if (in.K() < 2) throw std::invalid_argument("Chernoff information needs at least two blocks");
  double ci = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < in.K(); ++k) {
    for (Index l = 0; l < in.K(); ++l) {
      if (k != l) ci = std::min(ci, chernoff_pair(in, k, l).value);
    }
  }
  return ci;
}

}  // namespace dase::theory
