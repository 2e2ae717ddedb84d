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

// Node embeddings for the three methods under comparison: normalized
// Laplacian spectral clustering (SC), adjacency spectral embedding (ASE) and
// doubled adjacency spectral embedding (DASE, the spectral embedding of A*A).

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dase/graph.hpp"
#include "dase/spectral.hpp"

namespace dase::embed {

using Index = Eigen::Index;

enum class Method { sc, ase, dase };

std::string_view to_string(Method m);
/// Accepts "sc", "ase", "dase" (case-insensitive).
Method parse_method(std::string_view name);

struct Embedding {
  /// N x m: m = d (undirected ASE/DASE), 2d (directed ASE/DASE), K (SC).
  Eigen::MatrixXd coords;
  Method method = Method::dase;
  Index d = 0;
  bool scaled = true;
  /// Singular values (ASE/DASE) or Laplacian eigenvalues (SC) behind coords.
  Eigen::VectorXd spectrum;
};

/// Spectral embedding of an arbitrary operator: [U S^{1/2} | V S^{1/2}] when
/// `directed`, U S^{1/2} otherwise; the S^{1/2} factor is dropped when
/// `scaled` is false.
Embedding spectral_embedding(const spectral::LinearOperator& op, Index d, bool directed,
                             bool scaled, Method tag, const spectral::SolverOptions& options);

/// DASE: truncated SVD of A*A, applied implicitly as two sparse products.
Embedding dase_embedding(const graph::AdjacencyMatrix& A, Index d, bool scaled, Seed seed,
                         const spectral::SolverOptions& options = {});

/// ASE: truncated SVD of A.
Embedding ase_embedding(const graph::AdjacencyMatrix& A, Index d, bool scaled, Seed seed,
                        const spectral::SolverOptions& options = {});

/// Row-normalized eigenvectors of the K smallest eigenvalues of
/// L = I - D^{-1/2} S D^{-1/2}, S the binary symmetrization of A. Degree-zero
/// nodes get a zero row. Throws on an edgeless graph.
Embedding laplacian_sc_embedding(const graph::AdjacencyMatrix& A, Index K, Seed seed,
                                 const spectral::SolverOptions& options = {});

/// Dispatch on method; `dim` is d for ASE/DASE and K for SC.
Embedding embed(const graph::AdjacencyMatrix& A, Method method, Index dim, bool scaled,
                Seed seed, const spectral::SolverOptions& options = {});

/// Symmetric normalized Laplacian of the symmetrized graph.
spectral::SparseMatrix normalized_laplacian(const graph::AdjacencyMatrix& A);

/// CSV with header node,coord_0,...,coord_{m-1}. `names` may be empty, in
/// which case node indices are written.
void write_embedding_csv(const Embedding& e, std::ostream& out,
                         const std::vector<std::string>& names = {});

/// Reads the CSV written by write_embedding_csv (coordinates only).
Eigen::MatrixXd read_embedding_csv(std::istream& in, std::vector<std::string>* names = nullptr);

}  // namespace dase::embed
