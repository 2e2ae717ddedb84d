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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dase/io.hpp"
#include "helpers.hpp"

using namespace dase;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dase_test_" + name);
}

std::size_t error_line(const std::string& text, bool directed = true, bool binarize = true) {
  std::istringstream in(text);
  try {
    io::ingest_edge_list(in, directed, binarize);
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("edge list ingestion") {
  SUBCASE("duplicates and self-loops") {
    std::istringstream in("a\tb\na\tb\nc\tc\n");
    const auto r = io::ingest_edge_list(in, true);
    CHECK(r.A.size() == 3);
    CHECK(r.A.edge_count() == 1);
    CHECK(r.duplicates_collapsed == 1);
    CHECK(r.self_loops_dropped == 1);
    CHECK(r.names == std::vector<std::string>{"a", "b", "c"});
  }
  SUBCASE("three edges with a duplicate and a self-loop leave two") {
    std::istringstream in("# comment\n1\t2\n\n2\t3\n1\t2\t3.5\n3\t3\n");
    const auto r = io::ingest_edge_list(in, true);
    CHECK(r.A.edge_count() == 2);
    CHECK(r.lines_read == 4);
  }
  SUBCASE("undirected input merges both orientations") {
    std::istringstream in("x\ty\ny\tx\n");
    const auto r = io::ingest_edge_list(in, false);
    CHECK(r.A.edge_count() == 1);
    CHECK_FALSE(r.A.directed());
    CHECK(r.A.dense() == r.A.dense().transpose());
  }
  SUBCASE("zero weights are no edge") {
    std::istringstream in("a\tb\t0\nb\ta\t1\n");
    const auto r = io::ingest_edge_list(in, true);
    CHECK(r.A.edge_count() == 1);
    CHECK(r.A.size() == 2);
  }
  SUBCASE("malformed lines report their line number") {
    CHECK(error_line("a\tb\nbroken\n") == 2);
    CHECK(error_line("a\tb\n\n#c\na\tb\t-1\n") == 4);
    CHECK(error_line("a\tb\tnotanumber\n") == 1);
    CHECK(error_line("a\tb\t2\n", true, false) == 1);
    CHECK(error_line("a\tb\na\tb\n", true, false) == 2);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(io::ingest_edge_list(empty, true), io::ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS(io::ingest_edge_list(temp_path("does_not_exist.tsv"), true));
  }
}

TEST_CASE("canonical graph round trip") {
  for (bool directed : {true, false}) {
    const auto dense = testutil::random_adjacency(30, 0.2, directed, directed ? 1 : 2);
    const auto A = graph::AdjacencyMatrix::from_dense(dense, directed);
    std::stringstream buf;
    io::write_graph(buf, A);
    const auto back = io::read_graph(buf);
    CHECK(back.directed() == directed);
    CHECK(back.size() == 30);
    CHECK(back.dense() == dense);

    const auto path = temp_path(directed ? "g_dir.txt" : "g_undir.txt");
    io::write_graph(path, A);
    CHECK(io::read_graph(path).dense() == dense);
    std::filesystem::remove(path);
  }
  std::istringstream bad("# dase-graph 1\n# nodes 2\n# directed 1\n0\t5\n");
  CHECK_THROWS_AS(io::read_graph(bad), io::ParseError);
  std::istringstream no_header("0\t1\n");
  CHECK_THROWS_AS(io::read_graph(no_header), io::ParseError);
}

TEST_CASE("label CSV round trip") {
  const ClusterLabels labels{{0, 2, 1, 1, 0}, 3};
  std::stringstream buf;
  io::write_labels_csv(buf, labels);
  CHECK(buf.str().rfind("node,label\n", 0) == 0);
  const auto back = io::read_labels_csv(buf, 5);
  CHECK(back.labels == labels.labels);
  CHECK(back.K == 3);

  const std::vector<std::string> names{"e", "d", "c", "b", "a"};
  std::stringstream named;
  io::write_labels_csv(named, labels, names);
  CHECK(io::read_labels_csv(named, 5, names).labels == labels.labels);

  std::istringstream headerless("1,7\n0,3\n");
  const auto renum = io::read_labels_csv(headerless, 2);
  CHECK(renum.labels == std::vector<int>{0, 1});

  std::istringstream text("node,label\n0,periphery\n1,core\n2,core\n");
  CHECK(io::read_labels_csv(text, 3).labels == std::vector<int>{1, 0, 0});
  std::istringstream numeric("0,10\n1,9\n");
  CHECK(io::read_labels_csv(numeric, 2).labels == std::vector<int>{1, 0});

  std::istringstream missing("node,label\n0,1\n");
  CHECK_THROWS_AS(io::read_labels_csv(missing, 2), io::ParseError);
  std::istringstream repeated("0,1\n0,1\n1,0\n");
  CHECK_THROWS_AS(io::read_labels_csv(repeated, 2), io::ParseError);
  std::istringstream unknown("0,1\n9,0\n");
  CHECK_THROWS_AS(io::read_labels_csv(unknown, 2), io::ParseError);
}

TEST_CASE("heatmap layout") {
  SUBCASE("two cliques of different density") {
    // Nodes 0..3 form a complete digraph; nodes 4..7 a directed cycle.
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) dense(i, j) = 1;
    for (int i = 4; i < 8; ++i) dense(i, 4 + (i - 3) % 4) = 1;
    const auto A = graph::AdjacencyMatrix::from_dense(dense, true);
    const ClusterLabels labels{{1, 1, 1, 1, 0, 0, 0, 0}, 2};
    const auto layout = io::heatmap_layout(A, labels);
    REQUIRE(layout.blocks.size() == 2);
    CHECK(layout.blocks[0].label == 1);
    CHECK(layout.blocks[0].density == doctest::Approx(1.0));
    CHECK(layout.blocks[1].density == doctest::Approx(4.0 / 12.0));
    CHECK(layout.blocks[0].start == 0);
    CHECK(layout.blocks[0].end == 4);
    CHECK(layout.order == std::vector<graph::Index>{0, 1, 2, 3, 4, 5, 6, 7});

    const auto path = temp_path("heatmap.csv");
    io::export_heatmap_matrix(A, labels, path);
    std::ifstream in(path);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
      CHECK(std::count(line.begin(), line.end(), ',') == 7);
      ++rows;
    }
    CHECK(rows == 8);
    CHECK(std::filesystem::exists(path.string() + ".json"));
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".json");
  }
  SUBCASE("empty graph keeps every node") {
    const auto A = graph::AdjacencyMatrix::from_dense(Eigen::MatrixXd::Zero(5, 5), false);
    const auto layout = io::heatmap_layout(A, ClusterLabels{{0, 1, 0, 1, 0}, 2});
    CHECK(layout.order.size() == 5);
    CHECK(layout.blocks[0].label == 0);
    CHECK(layout.blocks[0].density == 0.0);
  }
}
