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

#include "dase/clustering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dase::cluster {

namespace {

void check_inputs(const Eigen::MatrixXd& points, Index K) {
  if (K < 1) throw std::invalid_argument("cluster count must be positive");
  if (points.rows() < K) throw std::invalid_argument("need at least K points");
  if (!points.allFinite()) throw std::invalid_argument("points contain non-finite values");
}

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& points, Index K, Rng& rng) {
  const Index n = points.rows();
  Eigen::MatrixXd centroids(K, points.cols());
  centroids.row(0) = points.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (Index c = 1; c < K; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centroids.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

// Nearest-centroid assignment (ties to the lowest index). Returns the
// objective and fills the per-point squared distance.
double assign_points(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                     std::vector<int>& labels, Eigen::VectorXd& dist2) {
  double obj = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
    dist2[i] = best;
    obj += best;
  }
  return obj;
}

// Moves the worst-fitting point into each empty cluster. Returns the new
// objective.
double repair_empty(const Eigen::MatrixXd& points, Eigen::MatrixXd& centroids,
                    std::vector<int>& labels, Eigen::VectorXd& dist2, double obj) {
  const Index K = centroids.rows();
  std::vector<Index> counts(static_cast<std::size_t>(K), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  for (Index c = 0; c < K; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    Index far = -1;
    for (Index i = 0; i < points.rows(); ++i) {
      if (counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] < 2) continue;
      if (far < 0 || dist2[i] > dist2[far]) far = i;
    }
    if (far < 0) break;  // unreachable when N >= K
    --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
    ++counts[static_cast<std::size_t>(c)];
    labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
    obj -= dist2[far];
    dist2[far] = 0.0;
    centroids.row(c) = points.row(far);
  }
  return std::max(obj, 0.0);
}

void update_centroids(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                      Eigen::MatrixXd& centroids) {
  const Index K = centroids.rows();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, points.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(K);
  for (Index i = 0; i < points.rows(); ++i) {
    sums.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
    counts[labels[static_cast<std::size_t>(i)]] += 1.0;
  }
  for (Index c = 0; c < K; ++c) {
    if (counts[c] > 0.0) centroids.row(c) = sums.row(c) / counts[c];
  }
}

bool increased(double prev, double next) {
  return next > prev + 1e-9 * std::max(1.0, std::abs(prev));
}

KMeansResult lloyd(const Eigen::MatrixXd& points, Index K, const KMeansConfig& config,
                   Seed seed) {
  Rng rng(seed);
  KMeansResult r;
  r.centroids = seed_plus_plus(points, K, rng);
  std::vector<int> labels(static_cast<std::size_t>(points.rows()), 0);
  Eigen::VectorXd dist2(points.rows());

  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < config.max_iters; ++it) {
    double obj = assign_points(points, r.centroids, labels, dist2);
    obj = repair_empty(points, r.centroids, labels, dist2, obj);
    if (increased(prev, obj)) throw std::logic_error("k-means objective increased");
    r.objective_trace.push_back(obj);
    r.iterations = it + 1;
    const bool done = obj == 0.0 || (std::isfinite(prev) && prev - obj <= config.tol * prev);
    update_centroids(points, labels, r.centroids);
    prev = obj;
    if (done) break;
  }
  r.labels = ClusterLabels{std::move(labels), static_cast<int>(K)};
  r.objective = mse_criterion(points, r.labels, r.centroids);
  if (increased(prev, r.objective)) throw std::logic_error("k-means objective increased");
  return r;
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

double mse_criterion(const Eigen::MatrixXd& points, const ClusterLabels& labels,
                     const Eigen::MatrixXd& centroids) {
  if (static_cast<Index>(labels.size()) != points.rows()) {
    throw std::invalid_argument("labels and points differ in length");
  }
  if (centroids.cols() != points.cols()) {
    throw std::invalid_argument("centroid dimension differs from point dimension");
  }
  double total = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    const int l = labels.labels[static_cast<std::size_t>(i)];
    if (l < 0 || l >= centroids.rows()) throw std::invalid_argument("label out of range");
    total += (points.row(i) - centroids.row(l)).squaredNorm();
  }
  return total;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, Index K, const KMeansConfig& config,
                    Seed seed) {
  check_inputs(points, K);
  const int restarts = std::max(1, config.restarts);
  KMeansResult best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    KMeansResult candidate =
        lloyd(points, K, config, derive_seed(seed, stream::restart, static_cast<std::uint64_t>(r)));
    if (!have || candidate.objective < best.objective) {
      best = std::move(candidate);
      have = true;
    }
  }
  best.restarts_used = restarts;
  return best;
}

GmmResult gmm(const Eigen::MatrixXd& points, Index K, const GmmConfig& config, Seed seed) {
  check_inputs(points, K);
  const Index n = points.rows();
  const Index m = points.cols();
  const Eigen::MatrixXd reg = config.reg * Eigen::MatrixXd::Identity(m, m);

  GmmResult g;
  {
    const auto init = kmeans(points, K, config.init, seed);
    g.means = init.centroids;
    g.weights = Eigen::VectorXd::Zero(K);
    g.covariances.assign(static_cast<std::size_t>(K), Eigen::MatrixXd::Zero(m, m));
    for (Index i = 0; i < n; ++i) {
      const int l = init.labels.labels[static_cast<std::size_t>(i)];
      const Eigen::RowVectorXd diff = points.row(i) - g.means.row(l);
      g.covariances[static_cast<std::size_t>(l)] += diff.transpose() * diff;
      g.weights[l] += 1.0;
    }
    for (Index k = 0; k < K; ++k) {
      auto& cov = g.covariances[static_cast<std::size_t>(k)];
      cov = cov / std::max(g.weights[k], 1.0) + reg;
    }
    g.weights /= static_cast<double>(n);
  }

  Eigen::MatrixXd logr(n, K);
  const double log2pi = std::log(2.0 * 3.14159265358979323846);
  double prev = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < config.max_iters; ++it) {
    // E-step.
    for (Index k = 0; k < K; ++k) {
      Eigen::LLT<Eigen::MatrixXd> llt(g.covariances[static_cast<std::size_t>(k)]);
      if (llt.info() != Eigen::Success) throw std::runtime_error("GMM covariance lost definiteness");
      const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
      const Eigen::MatrixXd centered = (points.rowwise() - g.means.row(k)).transpose();
      const Eigen::MatrixXd solved = llt.matrixL().solve(centered);
      const Eigen::VectorXd maha = solved.colwise().squaredNorm().transpose();
      const double lw = g.weights[k] > 0.0 ? std::log(g.weights[k])
                                           : -std::numeric_limits<double>::infinity();
      logr.col(k) = (lw - 0.5 * (static_cast<double>(m) * log2pi + logdet)) -
                    0.5 * maha.array();
    }
    double ll = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double lse = log_sum_exp(logr.row(i).transpose());
      ll += lse;
      logr.row(i).array() -= lse;
    }
    g.log_likelihood_trace.push_back(ll);
    g.log_likelihood = ll;
    g.iterations = it + 1;
    if (std::isfinite(prev) && std::abs(ll - prev) < config.tol * std::abs(prev)) break;
    prev = ll;
    if (it + 1 == config.max_iters) break;

    // M-step.
    const Eigen::MatrixXd resp = logr.array().exp();
    for (Index k = 0; k < K; ++k) {
      const double nk = resp.col(k).sum();
      if (nk <= 1e-300) {
        g.weights[k] = 0.0;
        continue;
      }
      g.weights[k] = nk / static_cast<double>(n);
      g.means.row(k) = (resp.col(k).transpose() * points) / nk;
      const Eigen::MatrixXd centered = points.rowwise() - g.means.row(k);
      g.covariances[static_cast<std::size_t>(k)] =
          (centered.transpose() * resp.col(k).asDiagonal() * centered) / nk + reg;
    }
    g.weights /= g.weights.sum();
  }

  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Index arg = 0;
    logr.row(i).maxCoeff(&arg);
    labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  g.labels = ClusterLabels{std::move(labels), static_cast<int>(K)};
  return g;
}

std::string_view to_string(Clusterer c) {
  return c == Clusterer::kmeans ? "kmeans" : "gmm";
}

Clusterer parse_clusterer(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "kmeans" || lower == "k-means") return Clusterer::kmeans;
  if (lower == "gmm") return Clusterer::gmm;
  throw std::invalid_argument("unknown clusterer '" + std::string(name) + "'");
}

ClusterLabels assign(const Eigen::MatrixXd& points, Index K, Clusterer clusterer, Seed seed) {
  if (clusterer == Clusterer::kmeans) return kmeans(points, K, {}, seed).labels;
  return gmm(points, K, {}, seed).labels;
}

}  // namespace dase::cluster
