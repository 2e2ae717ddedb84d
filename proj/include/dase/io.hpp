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

// Reading and writing graph, label and heatmap files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dase/graph.hpp"
#include "dase/labels.hpp"

namespace dase::io {

/// Raised for malformed input files; carries the 1-based line number (0 when
/// the problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct IngestResult {
  graph::AdjacencyMatrix A;
  /// names[i] is the identifier of node i, in first-appearance order.
  std::vector<std::string> names;
  /// Nonblank, non-comment lines.
  std::int64_t lines_read = 0;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicates_collapsed = 0;
};

/// Parses `source<TAB>target[<TAB>weight]` lines; `#` lines and blank lines
/// are skipped. Positive weights become a single binary edge, zero weights
/// are no edge and negative weights are an error. With binarize = false any
/// weight other than 1 and any duplicate edge is an error. Undirected input
/// treats (u, v) and (v, u) as the same edge.
IngestResult ingest_edge_list(std::istream& in, bool directed, bool binarize = true);
IngestResult ingest_edge_list(const std::filesystem::path& path, bool directed,
                              bool binarize = true);

/// Canonical graph file:
///   # dase-graph 1
///   # nodes N
///   # directed 0|1
///   u<TAB>v       (0-based, one line per stored arc, or per pair u < v when
///                  undirected)
void write_graph(std::ostream& out, const graph::AdjacencyMatrix& A);
void write_graph(const std::filesystem::path& path, const graph::AdjacencyMatrix& A);
graph::AdjacencyMatrix read_graph(std::istream& in);
graph::AdjacencyMatrix read_graph(const std::filesystem::path& path);

/// CSV with header `node,label`, one row per node in index order; `names`
/// replaces the node index when given.
void write_labels_csv(std::ostream& out, const ClusterLabels& labels,
                      const std::vector<std::string>& names = {});
void write_labels_csv(const std::filesystem::path& path, const ClusterLabels& labels,
                      const std::vector<std::string>& names = {});

/// Reads `node,label` rows; a first row naming no node is taken as a header.
/// Nodes are matched against `names` when it is nonempty, otherwise they must
/// be indices 0..N-1. Every node must appear exactly once. Distinct labels are
/// renumbered 0..K-1 in increasing order: numeric when all labels are
/// integers, lexicographic otherwise.
ClusterLabels read_labels_csv(std::istream& in, std::size_t N,
                              const std::vector<std::string>& names = {});
ClusterLabels read_labels_csv(const std::filesystem::path& path, std::size_t N,
                              const std::vector<std::string>& names = {});

struct HeatmapLayout {
  /// order[i] = original node shown at row/column i.
  std::vector<graph::Index> order;
  /// Clusters in display order with their [start, end) row ranges.
  struct Block {
    int label = 0;
    graph::Index start = 0;
    graph::Index end = 0;
    double density = 0.0;
  };
  std::vector<Block> blocks;
};

/// Clusters sorted by within-cluster edge density (descending, ties by
/// label); nodes inside a cluster by total degree (descending, ties by index).
HeatmapLayout heatmap_layout(const graph::AdjacencyMatrix& A, const ClusterLabels& labels);

/// Writes the permuted adjacency as N rows of comma-separated 0/1 values and
/// a JSON sidecar (`<path>.json`) with the node order and block boundaries.
HeatmapLayout export_heatmap_matrix(const graph::AdjacencyMatrix& A, const ClusterLabels& labels,
                                    const std::filesystem::path& path);

}  // namespace dase::io
