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

#include "dase/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace dase::spectral {

namespace {

constexpr double kBreakdown = 1e-13;

Index default_work_dim(Index d, Index limit, Index requested) {
  Index m = requested > 0 ? requested : std::max<Index>(3 * d + 20, 40);
  return std::clamp<Index>(m, std::min(d + 1, limit), limit);
}

Eigen::VectorXd random_unit(Rng& rng, Index n) {
  Eigen::VectorXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.normal();
  return x / x.norm();
}

// Orthogonalizes x against the first `count` columns of `basis` with two
// classical Gram-Schmidt passes. Returns the accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& basis, Index count, Eigen::VectorXd& x) {
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(count);
  if (count == 0) return coeff;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = basis.leftCols(count).transpose() * x;
    x.noalias() -= basis.leftCols(count) * c;
    coeff += c;
  }
  return coeff;
}

// Replacement direction after a Lanczos breakdown.
Eigen::VectorXd fresh_direction(Rng& rng, const Eigen::MatrixXd& basis, Index count) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::VectorXd x = random_unit(rng, basis.rows());
    orthogonalize(basis, count, x);
    const double nrm = x.norm();
    if (nrm > 1e-8) return x / nrm;
  }
  throw std::runtime_error("failed to extend a Krylov basis");
}

double max_svd_residual(const LinearOperator& op, const SingularTriplets& t) {
  const double scale = t.sigma.size() > 0 ? t.sigma[0] : 0.0;
  double worst = 0.0;
  Eigen::VectorXd y(op.rows()), z(op.cols());
  for (Index k = 0; k < t.sigma.size(); ++k) {
    op.apply(t.V.col(k), y);
    op.apply_transpose(t.U.col(k), z);
    worst = std::max({worst, (y - t.sigma[k] * t.U.col(k)).norm(),
                      (z - t.sigma[k] * t.V.col(k)).norm()});
  }
  return scale > 0.0 ? worst / scale : worst;
}

double max_eig_residual(const LinearOperator& op, const EigenPairs& e) {
  double scale = e.values.size() > 0 ? e.values.cwiseAbs().maxCoeff() : 0.0;
  double worst = 0.0;
  Eigen::VectorXd y(op.rows());
  for (Index k = 0; k < e.values.size(); ++k) {
    op.apply(e.vectors.col(k), y);
    worst = std::max(worst, (y - e.values[k] * e.vectors.col(k)).norm());
  }
  return scale > 0.0 ? worst / scale : worst;
}

SingularTriplets dense_svd(const LinearOperator& op, Index d) {
  const Eigen::MatrixXd m = materialize(op);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularTriplets out;
  out.U = svd.matrixU().leftCols(d);
  out.V = svd.matrixV().leftCols(d);
  out.sigma = svd.singularValues().head(d);
  return out;
}

SingularTriplets lanczos_svd(const LinearOperator& op, Index d, const SolverOptions& opt) {
  const Index n = op.cols();
  const Index r = op.rows();
  const Index m = default_work_dim(d, std::min(n, r), opt.work_dim);

  Rng rng(opt.seed);
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd W(r, m);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  V.col(0) = random_unit(rng, n);

  Eigen::VectorXd w(r), f(n);
  Index kept = 0;
  double best = std::numeric_limits<double>::infinity();

  for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
    double beta = 0.0;
    for (Index j = kept; j < m; ++j) {
      op.apply(V.col(j), w);
      B.col(j).head(j) += orthogonalize(W, j, w);
      double alpha = w.norm();
      if (alpha <= kBreakdown * std::max(1.0, B.cwiseAbs().maxCoeff())) {
        w = fresh_direction(rng, W, j);
        alpha = 0.0;
      } else {
        w /= alpha;
      }
      B(j, j) = alpha;
      W.col(j) = w;

      op.apply_transpose(W.col(j), f);
      orthogonalize(V, j + 1, f);
      beta = f.norm();
      if (beta <= kBreakdown * std::max(1.0, B.cwiseAbs().maxCoeff())) {
        beta = 0.0;
        if (j + 1 < n) {
          V.col(j + 1) = fresh_direction(rng, V, j + 1);
        } else {
          V.col(j + 1).setZero();
        }
      } else {
        V.col(j + 1) = f / beta;
      }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> small(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = small.singularValues();
    const double scale = s[0];
    double worst = 0.0;
    for (Index i = 0; i < d; ++i) {
      worst = std::max(worst, beta * std::abs(small.matrixU()(m - 1, i)));
    }
    const double rel = scale > 0.0 ? worst / scale : worst;
    best = std::min(best, rel);

    if (rel <= opt.tol) {
      SingularTriplets out;
      out.U = W * small.matrixU().leftCols(d);
      out.V = V.leftCols(m) * small.matrixV().leftCols(d);
      out.sigma = s.head(d);
      return out;
    }

    // Thick restart: keep the leading Ritz vectors and continue from the
    // residual direction.
    kept = std::min<Index>(m - 1, d + (m - d) / 2);
    const Eigen::MatrixXd Vk = V.leftCols(m) * small.matrixV().leftCols(kept);
    const Eigen::MatrixXd Wk = W * small.matrixU().leftCols(kept);
    V.col(kept) = V.col(m);
    V.leftCols(kept) = Vk;
    W.leftCols(kept) = Wk;
    B.setZero();
    B.diagonal().head(kept) = s.head(kept);
  }
  throw ConvergenceError("truncated_svd did not converge after " +
                             std::to_string(opt.max_restarts) + " restarts",
                         best);
}

EigenPairs dense_eigs(const LinearOperator& op, Index d, Which which) {
  const Eigen::MatrixXd m = materialize(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  const Index n = m.rows();
  EigenPairs out;
  out.values.resize(d);
  out.vectors.resize(n, d);
  for (Index k = 0; k < d; ++k) {
    const Index idx = which == Which::largest ? n - 1 - k : k;
    out.values[k] = es.eigenvalues()[idx];
    out.vectors.col(k) = es.eigenvectors().col(idx);
  }
  return out;
}

EigenPairs lanczos_eigs(const LinearOperator& op, Index d, Which which,
                        const SolverOptions& opt) {
  const Index n = op.rows();
  const Index m = default_work_dim(d, n, opt.work_dim);

  Rng rng(opt.seed);
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  V.col(0) = random_unit(rng, n);
  Eigen::VectorXd w(n);
  Index kept = 0;
  double best = std::numeric_limits<double>::infinity();

  for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
    double beta = 0.0;
    for (Index j = kept; j < m; ++j) {
      op.apply(V.col(j), w);
      T.col(j).head(j + 1) += orthogonalize(V, j + 1, w);
      beta = w.norm();
      if (beta <= kBreakdown * std::max(1.0, T.cwiseAbs().maxCoeff())) {
        beta = 0.0;
        if (j + 1 < n) {
          V.col(j + 1) = fresh_direction(rng, V, j + 1);
        } else {
          V.col(j + 1).setZero();
        }
      } else {
        V.col(j + 1) = w / beta;
      }
    }
    // Only the upper triangle was accumulated; V^T A V is symmetric.
    Eigen::MatrixXd sym = T.triangularView<Eigen::Upper>();
    sym.triangularView<Eigen::StrictlyLower>() = sym.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(sym);
    const Eigen::VectorXd& theta = small.eigenvalues();
    const Eigen::MatrixXd& S = small.eigenvectors();

    std::vector<Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    if (which == Which::largest) std::reverse(order.begin(), order.end());

    const double scale = theta.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (Index i = 0; i < d; ++i) {
      worst = std::max(worst, beta * std::abs(S(m - 1, order[static_cast<std::size_t>(i)])));
    }
    const double rel = scale > 0.0 ? worst / scale : worst;
    best = std::min(best, rel);

    if (rel <= opt.tol) {
      EigenPairs out;
      out.values.resize(d);
      out.vectors.resize(n, d);
      for (Index i = 0; i < d; ++i) {
        const Index idx = order[static_cast<std::size_t>(i)];
        out.values[i] = theta[idx];
        out.vectors.col(i) = V.leftCols(m) * S.col(idx);
      }
      return out;
    }

    kept = std::min<Index>(m - 1, d + (m - d) / 2);
    Eigen::MatrixXd Sk(m, kept);
    Eigen::VectorXd thetak(kept);
    for (Index i = 0; i < kept; ++i) {
      Sk.col(i) = S.col(order[static_cast<std::size_t>(i)]);
      thetak[i] = theta[order[static_cast<std::size_t>(i)]];
    }
    const Eigen::MatrixXd Vk = V.leftCols(m) * Sk;
    V.col(kept) = V.col(m);
    V.leftCols(kept) = Vk;
    T.setZero();
    T.diagonal().head(kept) = thetak;
  }
  throw ConvergenceError("symmetric_eigs did not converge after " +
                             std::to_string(opt.max_restarts) + " restarts",
                         best);
}

void check_rank(Index d, Index limit) {
  if (d < 1) throw std::invalid_argument("requested rank must be at least 1");
  if (d > limit) throw std::invalid_argument("requested rank exceeds the matrix dimension");
}

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("matrix is not symmetric");
  }
}

}  // namespace

SquaredOperator::SquaredOperator(const SparseMatrix& m) : m_(&m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SquaredOperator needs a square matrix");
}

void SquaredOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const Eigen::VectorXd t = *m_ * x;
  y.noalias() = *m_ * t;
}

void SquaredOperator::apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const Eigen::VectorXd t = m_->transpose() * x;
  y.noalias() = m_->transpose() * t;
}

Eigen::MatrixXd materialize(const LinearOperator& op) {
  Eigen::MatrixXd out(op.rows(), op.cols());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(op.cols());
  Eigen::VectorXd y(op.rows());
  for (Index j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    op.apply(e, y);
    out.col(j) = y;
    e[j] = 0.0;
  }
  return out;
}

void canonicalize_signs(Eigen::MatrixXd& primary, Eigen::MatrixXd* secondary) {
  for (Index k = 0; k < primary.cols(); ++k) {
    Index arg = 0;
    double top = -1.0;
    for (Index i = 0; i < primary.rows(); ++i) {
      const double a = std::abs(primary(i, k));
      if (a > top) {
        top = a;
        arg = i;
      }
    }
    if (primary.rows() > 0 && primary(arg, k) < 0.0) {
      primary.col(k) *= -1.0;
      if (secondary != nullptr) secondary->col(k) *= -1.0;
    }
  }
}

SingularTriplets truncated_svd(const LinearOperator& op, Index d, const SolverOptions& options) {
  check_rank(d, std::min(op.rows(), op.cols()));
  SingularTriplets out = std::max(op.rows(), op.cols()) <= options.dense_threshold
                             ? dense_svd(op, d)
                             : lanczos_svd(op, d, options);
  canonicalize_signs(out.U, &out.V);
  out.residual = max_svd_residual(op, out);
  return out;
}

SingularTriplets truncated_svd(const Eigen::MatrixXd& m, Index d, const SolverOptions& options) {
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  return truncated_svd(DenseOperator(m), d, options);
}

SingularTriplets truncated_svd(const SparseMatrix& m, Index d, const SolverOptions& options) {
  return truncated_svd(SparseOperator(m), d, options);
}

EigenPairs symmetric_eigs(const LinearOperator& op, Index d, Which which,
                          const SolverOptions& options) {
  if (op.rows() != op.cols()) throw std::invalid_argument("symmetric_eigs needs a square operator");
  check_rank(d, op.rows());
  EigenPairs out = op.rows() <= options.dense_threshold ? dense_eigs(op, d, which)
                                                        : lanczos_eigs(op, d, which, options);
  canonicalize_signs(out.vectors, nullptr);
  out.residual = max_eig_residual(op, out);
  return out;
}

EigenPairs symmetric_eigs(const Eigen::MatrixXd& m, Index d, Which which,
                          const SolverOptions& options) {
  check_symmetric(m);
  return symmetric_eigs(DenseOperator(m), d, which, options);
}

EigenPairs symmetric_eigs(const SparseMatrix& m, Index d, Which which,
                          const SolverOptions& options) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const SparseMatrix t = m.transpose();
  double scale = 1.0;
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) scale = std::max(scale, std::abs(it.value()));
  }
  const SparseMatrix diff = m - t;
  for (Index i = 0; i < diff.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(diff, i); it; ++it) {
      if (std::abs(it.value()) > 1e-10 * scale) throw std::invalid_argument("matrix is not symmetric");
    }
  }
  return symmetric_eigs(SparseOperator(m), d, which, options);
}

}  // namespace dase::spectral
