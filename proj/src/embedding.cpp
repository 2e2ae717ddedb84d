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

#include "dase/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dase::embed {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::sc: return "sc";
    case Method::ase: return "ase";
    case Method::dase: return "dase";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sc") return Method::sc;
  if (lower == "ase") return Method::ase;
  if (lower == "dase") return Method::dase;
  throw std::invalid_argument("unknown embedding method '" + std::string(name) + "'");
}

Embedding spectral_embedding(const spectral::LinearOperator& op, Index d, bool directed,
                             bool scaled, Method tag, const spectral::SolverOptions& options) {
  const auto svd = spectral::truncated_svd(op, d, options);
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(d);
  if (scaled) weight = svd.sigma.cwiseMax(0.0).cwiseSqrt();

  Embedding e;
  e.method = tag;
  e.d = d;
  e.scaled = scaled;
  e.spectrum = svd.sigma;
  if (directed) {
    e.coords.resize(op.rows(), 2 * d);
    e.coords.leftCols(d) = svd.U * weight.asDiagonal();
    e.coords.rightCols(d) = svd.V * weight.asDiagonal();
  } else {
    e.coords = svd.U * weight.asDiagonal();
  }
  return e;
}

Embedding dase_embedding(const graph::AdjacencyMatrix& A, Index d, bool scaled, Seed seed,
                         const spectral::SolverOptions& options) {
  auto opts = options;
  opts.seed = seed;
  const spectral::SquaredOperator op(A.matrix());
  return spectral_embedding(op, d, A.directed(), scaled, Method::dase, opts);
}

Embedding ase_embedding(const graph::AdjacencyMatrix& A, Index d, bool scaled, Seed seed,
                        const spectral::SolverOptions& options) {
  auto opts = options;
  opts.seed = seed;
  const spectral::SparseOperator op(A.matrix());
  return spectral_embedding(op, d, A.directed(), scaled, Method::ase, opts);
}

spectral::SparseMatrix normalized_laplacian(const graph::AdjacencyMatrix& A) {
  const Index n = A.size();
  spectral::SparseMatrix sym = A.matrix();
  if (A.directed()) {
    const spectral::SparseMatrix t = A.matrix().transpose();
    sym = sym + t;
    for (Index i = 0; i < sym.outerSize(); ++i) {
      for (spectral::SparseMatrix::InnerIterator it(sym, i); it; ++it) it.valueRef() = 1.0;
    }
  }
  Eigen::VectorXd inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    const double deg = sym.row(i).sum();
    inv_sqrt[i] = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(sym.nonZeros() + n));
  for (Index i = 0; i < n; ++i) {
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
    for (spectral::SparseMatrix::InnerIterator it(sym, i); it; ++it) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()),
                            -inv_sqrt[i] * inv_sqrt[it.col()]);
    }
  }
  spectral::SparseMatrix L(n, n);
  L.setFromTriplets(triplets.begin(), triplets.end());
  return L;
}

Embedding laplacian_sc_embedding(const graph::AdjacencyMatrix& A, Index K, Seed seed,
                                 const spectral::SolverOptions& options) {
  if (A.edge_count() == 0) throw std::invalid_argument("spectral clustering needs at least one edge");
  auto opts = options;
  opts.seed = seed;
  const auto L = normalized_laplacian(A);
  // TODO: exactly repeated eigenvalues (several connected components) are
  // only resolved on the dense path; a block Lanczos would cover large graphs.
  const auto eig = spectral::symmetric_eigs(spectral::SparseOperator(L), K,
                                            spectral::Which::smallest, opts);
  const Eigen::VectorXd deg = A.total_degree();
  Embedding e;
  e.method = Method::sc;
  e.d = K;
  e.scaled = false;
  e.spectrum = eig.values;
  e.coords = eig.vectors;
  for (Index i = 0; i < e.coords.rows(); ++i) {
    if (deg[i] == 0.0) {
      e.coords.row(i).setZero();
      continue;
    }
    const double nrm = e.coords.row(i).norm();
    if (nrm > 0.0) e.coords.row(i) /= nrm;
  }
  return e;
}

Embedding embed(const graph::AdjacencyMatrix& A, Method method, Index dim, bool scaled,
                Seed seed, const spectral::SolverOptions& options) {
  switch (method) {
    case Method::sc: return laplacian_sc_embedding(A, dim, seed, options);
    case Method::ase: return ase_embedding(A, dim, scaled, seed, options);
    case Method::dase: return dase_embedding(A, dim, scaled, seed, options);
  }
  throw std::invalid_argument("unknown embedding method");
}

void write_embedding_csv(const Embedding& e, std::ostream& out,
                         const std::vector<std::string>& names) {
  out << "node";
  for (Index j = 0; j < e.coords.cols(); ++j) out << ",coord_" << j;
  out << '\n' << std::setprecision(17);
  for (Index i = 0; i < e.coords.rows(); ++i) {
    if (names.empty()) {
      out << i;
    } else {
      out << names.at(static_cast<std::size_t>(i));
    }
    for (Index j = 0; j < e.coords.cols(); ++j) out << ',' << e.coords(i, j);
    out << '\n';
  }
}

Eigen::MatrixXd read_embedding_csv(std::istream& in, std::vector<std::string>* names) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("node", 0) != 0) {
    throw std::runtime_error("embedding CSV must start with a 'node,...' header");
  }
  const auto cols = static_cast<Index>(std::count(line.begin(), line.end(), ','));
  std::vector<double> values;
  Index rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    if (names != nullptr) names->push_back(cell);
    Index read = 0;
    while (std::getline(ss, cell, ',')) {
      values.push_back(std::stod(cell));
      ++read;
    }
    if (read != cols) {
      throw std::runtime_error("embedding CSV row " + std::to_string(rows + 2) +
                               " has the wrong number of columns");
    }
    ++rows;
  }
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

}  // namespace dase::embed
