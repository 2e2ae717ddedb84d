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

#include "dase/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace dase::io {

namespace {

using graph::Index;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_double(std::string_view s, double& value) {
  try {
    std::size_t used = 0;
    value = std::stod(std::string(s), &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

void ensure_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

IngestResult ingest_edge_list(std::istream& in, bool directed, bool binarize) {
  IngestResult r;
  std::unordered_map<std::string, Index> index;
  std::set<std::pair<Index, Index>> edges;
  auto node = [&](std::string_view name) {
    auto [it, inserted] = index.try_emplace(std::string(name), static_cast<Index>(r.names.size()));
    if (inserted) r.names.emplace_back(name);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    ++r.lines_read;
    const auto parts = split(text, '\t');
    if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
      throw ParseError("expected source<TAB>target[<TAB>weight]", lineno);
    }
    double weight = 1.0;
    if (parts.size() == 3 && !parse_double(parts[2], weight)) {
      throw ParseError("weight is not a number", lineno);
    }
    if (weight < 0.0) throw ParseError("negative edge weight", lineno);
    if (!binarize && weight != 1.0) {
      throw ParseError("non-binary weight while binarization is off", lineno);
    }
    const Index u = node(parts[0]);
    const Index v = node(parts[1]);
    if (weight == 0.0) continue;
    if (u == v) {
      ++r.self_loops_dropped;
      continue;
    }
    const auto key = (directed || u < v) ? std::make_pair(u, v) : std::make_pair(v, u);
    if (!edges.insert(key).second) {
      if (!binarize) throw ParseError("duplicate edge while binarization is off", lineno);
      ++r.duplicates_collapsed;
    }
  }
  if (r.names.empty()) throw ParseError("edge list contains no edges", 0);
  r.A = graph::AdjacencyMatrix::from_edges(static_cast<Index>(r.names.size()),
                                           {edges.begin(), edges.end()}, directed);
  return r;
}

IngestResult ingest_edge_list(const std::filesystem::path& path, bool directed, bool binarize) {
  auto in = open_in(path);
  return ingest_edge_list(in, directed, binarize);
}

void write_graph(std::ostream& out, const graph::AdjacencyMatrix& A) {
  out << "# dase-graph 1\n# nodes " << A.size() << "\n# directed " << (A.directed() ? 1 : 0)
      << '\n';
  const auto& m = A.matrix();
  for (Index u = 0; u < m.outerSize(); ++u) {
    for (graph::SparseBinary::InnerIterator it(m, u); it; ++it) {
      if (!A.directed() && it.col() < u) continue;
      out << u << '\t' << it.col() << '\n';
    }
  }
}

void write_graph(const std::filesystem::path& path, const graph::AdjacencyMatrix& A) {
  auto out = open_out(path);
  write_graph(out, A);
  ensure_written(out, path);
}

graph::AdjacencyMatrix read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  int directed = -1;
  bool magic = false;
  std::vector<std::pair<Index, Index>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::istringstream header{std::string(text.substr(1))};
      std::string key;
      header >> key;
      if (key == "dase-graph") {
        int version = 0;
        header >> version;
        if (version != 1) throw ParseError("unsupported graph file version", lineno);
        magic = true;
      } else if (key == "nodes") {
        header >> n;
      } else if (key == "directed") {
        header >> directed;
      }
      continue;
    }
    if (!magic || n < 0 || (directed != 0 && directed != 1)) {
      throw ParseError("graph header must precede the edges", lineno);
    }
    const auto parts = split(text, '\t');
    long long u = 0, v = 0;
    if (parts.size() != 2 || !parse_number(parts[0], u) || !parse_number(parts[1], v)) {
      throw ParseError("expected u<TAB>v with integer node indices", lineno);
    }
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("node index out of range", lineno);
    if (u == v) throw ParseError("self-loop in canonical graph file", lineno);
    edges.emplace_back(u, v);
  }
  if (!magic || n < 0 || (directed != 0 && directed != 1)) {
    throw ParseError("missing or incomplete graph header", 0);
  }
  return graph::AdjacencyMatrix::from_edges(static_cast<Index>(n), edges, directed == 1);
}

graph::AdjacencyMatrix read_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_labels_csv(std::ostream& out, const ClusterLabels& labels,
                      const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != labels.size()) {
    throw std::invalid_argument("names and labels differ in length");
  }
  out << "node,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (names.empty()) {
      out << i;
    } else {
      out << names[i];
    }
    out << ',' << labels.labels[i] << '\n';
  }
}

void write_labels_csv(const std::filesystem::path& path, const ClusterLabels& labels,
                      const std::vector<std::string>& names) {
  auto out = open_out(path);
  write_labels_csv(out, labels, names);
  ensure_written(out, path);
}

ClusterLabels read_labels_csv(std::istream& in, std::size_t N,
                              const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != N) {
    throw std::invalid_argument("names must list every node");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);

  std::vector<std::string> raw(N);
  std::vector<char> seen(N, 0);
  std::size_t filled = 0;
  std::string line;
  std::size_t lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const bool header_allowed = first_row;
    first_row = false;
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw ParseError("expected node,label", lineno);
    const std::string_view label = trim(parts[1]);
    if (label.empty()) throw ParseError("empty label", lineno);
    // A first row whose node field names no node is a header.
    std::size_t u = 0;
    if (!names.empty()) {
      const auto it = index.find(std::string(parts[0]));
      if (it == index.end()) {
        if (header_allowed) continue;
        throw ParseError("unknown node '" + std::string(parts[0]) + "'", lineno);
      }
      u = it->second;
    } else {
      long long idx = 0;
      if (!parse_number(parts[0], idx)) {
        if (header_allowed) continue;
        throw ParseError("node is not an index", lineno);
      }
      if (idx < 0 || static_cast<std::size_t>(idx) >= N) throw ParseError("node index out of range", lineno);
      u = static_cast<std::size_t>(idx);
    }
    if (seen[u]) throw ParseError("node listed twice", lineno);
    seen[u] = 1;
    raw[u] = std::string(label);
    ++filled;
  }
  if (filled != N) {
    throw ParseError("label file covers " + std::to_string(filled) + " of " + std::to_string(N) +
                         " nodes",
                     0);
  }
  // Integer labels sort numerically, anything else lexicographically.
  bool numeric = true;
  for (const auto& l : raw) {
    long long v = 0;
    numeric = numeric && parse_number(l, v);
  }
  auto less = [numeric](const std::string& a, const std::string& b) {
    if (!numeric) return a < b;
    long long x = 0, y = 0;
    parse_number(a, x);
    parse_number(b, y);
    return x < y;
  };
  std::map<std::string, int, decltype(less)> renumber(less);
  for (const auto& l : raw) renumber.emplace(l, 0);
  int next = 0;
  for (auto& [value, id] : renumber) id = next++;
  ClusterLabels out;
  out.K = std::max(1, next);
  out.labels.reserve(N);
  for (const auto& l : raw) out.labels.push_back(renumber.at(l));
  return out;
}

ClusterLabels read_labels_csv(const std::filesystem::path& path, std::size_t N,
                              const std::vector<std::string>& names) {
  auto in = open_in(path);
  return read_labels_csv(in, N, names);
}

HeatmapLayout heatmap_layout(const graph::AdjacencyMatrix& A, const ClusterLabels& labels) {
  const Index n = A.size();
  if (static_cast<Index>(labels.size()) != n) {
    throw std::invalid_argument("labels must cover every node");
  }
  labels.validate();
  const int K = labels.K;
  const auto counts = labels.counts();
  const Eigen::VectorXd degree = A.total_degree();

  std::vector<double> within(static_cast<std::size_t>(K), 0.0);
  const auto& m = A.matrix();
  for (Index u = 0; u < n; ++u) {
    const int a = labels.labels[static_cast<std::size_t>(u)];
    for (graph::SparseBinary::InnerIterator it(m, u); it; ++it) {
      if (labels.labels[static_cast<std::size_t>(it.col())] == a) within[static_cast<std::size_t>(a)] += 1.0;
    }
  }
  std::vector<double> density(static_cast<std::size_t>(K), 0.0);
  for (int k = 0; k < K; ++k) {
    const double c = static_cast<double>(counts[static_cast<std::size_t>(k)]);
    if (c > 1.0) density[static_cast<std::size_t>(k)] = within[static_cast<std::size_t>(k)] / (c * (c - 1.0));
  }

  std::vector<int> cluster_order(static_cast<std::size_t>(K));
  std::iota(cluster_order.begin(), cluster_order.end(), 0);
  std::stable_sort(cluster_order.begin(), cluster_order.end(), [&](int a, int b) {
    return density[static_cast<std::size_t>(a)] > density[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(static_cast<std::size_t>(K));
  for (int i = 0; i < K; ++i) rank[static_cast<std::size_t>(cluster_order[static_cast<std::size_t>(i)])] = i;

  HeatmapLayout layout;
  layout.order.resize(static_cast<std::size_t>(n));
  std::iota(layout.order.begin(), layout.order.end(), Index{0});
  std::stable_sort(layout.order.begin(), layout.order.end(), [&](Index u, Index v) {
    const int ru = rank[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(u)])];
    const int rv = rank[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(v)])];
    if (ru != rv) return ru < rv;
    return degree[u] > degree[v];
  });

  Index start = 0;
  for (int k : cluster_order) {
    const auto size = static_cast<Index>(counts[static_cast<std::size_t>(k)]);
    if (size == 0) continue;
    layout.blocks.push_back({k, start, start + size, density[static_cast<std::size_t>(k)]});
    start += size;
  }
  return layout;
}

HeatmapLayout export_heatmap_matrix(const graph::AdjacencyMatrix& A, const ClusterLabels& labels,
                                    const std::filesystem::path& path) {
  const HeatmapLayout layout = heatmap_layout(A, labels);
  const Index n = A.size();
  std::vector<Index> position(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) position[static_cast<std::size_t>(layout.order[static_cast<std::size_t>(i)])] = i;

  {
    auto out = open_out(path);
    std::string row;
    const auto& m = A.matrix();
    for (Index i = 0; i < n; ++i) {
      row.assign(static_cast<std::size_t>(n > 0 ? 2 * n - 1 : 0), ',');
      for (Index j = 0; j < n; ++j) row[static_cast<std::size_t>(2 * j)] = '0';
      for (graph::SparseBinary::InnerIterator it(m, layout.order[static_cast<std::size_t>(i)]); it; ++it) {
        row[static_cast<std::size_t>(2 * position[static_cast<std::size_t>(it.col())])] = '1';
      }
      out << row << '\n';
    }
    ensure_written(out, path);
  }

  nlohmann::json sidecar;
  sidecar["schema_version"] = 1;
  sidecar["nodes"] = n;
  sidecar["order"] = layout.order;
  sidecar["blocks"] = nlohmann::json::array();
  for (const auto& b : layout.blocks) {
    sidecar["blocks"].push_back(
        {{"label", b.label}, {"start", b.start}, {"end", b.end}, {"density", b.density}});
  }
  const std::filesystem::path side = path.string() + ".json";
  auto out = open_out(side);
  out << sidecar.dump(2) << '\n';
  ensure_written(out, side);
  return layout;
}

}  // namespace dase::io
