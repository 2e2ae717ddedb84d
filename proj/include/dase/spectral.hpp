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

// Truncated singular value and symmetric eigenvalue solvers.
//
// Both solvers work on an abstract LinearOperator so that products such as
// A*A can be applied as two sparse products without forming them. Inputs up
// to SolverOptions::dense_threshold rows are materialized and decomposed
// densely; larger ones go through restarted Lanczos with full
// reorthogonalization.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>

#include "dase/rng.hpp"

namespace dase::spectral {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  /// y = M x
  virtual void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
  /// y = M^T x
  virtual void apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
};

/// Non-owning view of a dense matrix.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(const Eigen::MatrixXd& m) : m_(&m) {}
  Index rows() const override { return m_->rows(); }
  Index cols() const override { return m_->cols(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override { y.noalias() = *m_ * x; }
  void apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y.noalias() = m_->transpose() * x;
  }

 private:
  const Eigen::MatrixXd* m_;
};

/// Non-owning view of a sparse matrix.
class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(const SparseMatrix& m) : m_(&m) {}
  Index rows() const override { return m_->rows(); }
  Index cols() const override { return m_->cols(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override { y.noalias() = *m_ * x; }
  void apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y.noalias() = m_->transpose() * x;
  }

 private:
  const SparseMatrix* m_;
};

/// The square M*M of a sparse square matrix, applied as two products:
/// M (M x) forward and M^T (M^T x) transposed.
class SquaredOperator final : public LinearOperator {
 public:
  explicit SquaredOperator(const SparseMatrix& m);
  Index rows() const override { return m_->rows(); }
  Index cols() const override { return m_->cols(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;
  void apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;

 private:
  const SparseMatrix* m_;
};

/// c * M for a wrapped operator M.
class ScaledOperator final : public LinearOperator {
 public:
  ScaledOperator(const LinearOperator& m, double c) : m_(&m), c_(c) {}
  Index rows() const override { return m_->rows(); }
  Index cols() const override { return m_->cols(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    m_->apply(x, y);
    y *= c_;
  }
  void apply_transpose(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    m_->apply_transpose(x, y);
    y *= c_;
  }

 private:
  const LinearOperator* m_;
  double c_;
};

/// Dense copy of an operator, built column by column.
Eigen::MatrixXd materialize(const LinearOperator& op);

struct SolverOptions {
  /// Convergence threshold on the relative residual (relative to the largest
  /// computed singular value / eigenvalue magnitude).
  double tol = 1e-8;
  int max_restarts = 1000;
  /// Operators with at most this many rows are decomposed densely.
  Index dense_threshold = 256;
  /// Krylov subspace size; 0 picks max(3d + 20, 40) capped at the dimension.
  Index work_dim = 0;
  Seed seed = 0;
};

/// Top-d singular triplets, sigma nonincreasing. Each pair (u_k, v_k) is
/// sign-normalized so the largest-magnitude entry of u_k is positive.
struct SingularTriplets {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd V;
  /// max_k max(|M v_k - s_k u_k|, |M^T u_k - s_k v_k|) / s_1
  double residual = 0.0;
};

enum class Which { largest, smallest };

/// d eigenpairs of a symmetric operator at one end of the spectrum. Values are
/// ordered from the extreme inward (descending for largest, ascending for
/// smallest).
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  double residual = 0.0;
};

/// Raised when Lanczos stops without meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

SingularTriplets truncated_svd(const LinearOperator& op, Index d,
                               const SolverOptions& options = {});
SingularTriplets truncated_svd(const Eigen::MatrixXd& m, Index d,
                               const SolverOptions& options = {});
SingularTriplets truncated_svd(const SparseMatrix& m, Index d,
                               const SolverOptions& options = {});

/// The operator is assumed symmetric; the matrix overloads check symmetry to
/// within 1e-10 (relative to the largest entry) and throw otherwise.
EigenPairs symmetric_eigs(const LinearOperator& op, Index d, Which which,
                          const SolverOptions& options = {});
EigenPairs symmetric_eigs(const Eigen::MatrixXd& m, Index d, Which which,
                          const SolverOptions& options = {});
EigenPairs symmetric_eigs(const SparseMatrix& m, Index d, Which which,
                          const SolverOptions& options = {});

/// Flips column pairs so the largest-|.| entry of each column of `primary` is
/// positive; ties go to the lowest row index. `secondary` may be null.
void canonicalize_signs(Eigen::MatrixXd& primary, Eigen::MatrixXd* secondary);

}  // namespace dase::spectral
