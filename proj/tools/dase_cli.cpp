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

// Command-line front end for the library.

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dase/bounds.hpp"
#include "dase/chernoff.hpp"
#include "dase/clustering.hpp"
#include "dase/embedding.hpp"
#include "dase/graph.hpp"
#include "dase/harness.hpp"
#include "dase/io.hpp"
#include "dase/metrics.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dase;
using Index = Eigen::Index;

namespace {

// Model given on the command line or in a JSON file with keys B, pi, N and
// directed.
struct ModelArgs {
  std::string B = "[[0.08,0.048],[0.048,0.024]]";
  std::string pi = "[0.5,0.5]";
  Index N = 1000;
  bool directed = true;
  std::string config;
};

Eigen::MatrixXd parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("B must be a nonempty nested array");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j[i].size()) != cols) throw std::invalid_argument("B rows differ in length");
    for (Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Eigen::VectorXd parse_vector(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

graph::BlockModel load_model(ModelArgs& args) {
  json B = json::parse(args.B);
  json pi = json::parse(args.pi);
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw std::runtime_error("cannot open '" + args.config + "'");
    const json cfg = json::parse(in);
    for (const auto& [key, value] : cfg.items()) {
      if (key == "B") B = value;
      else if (key == "pi") pi = value;
      else if (key == "N") args.N = value.get<Index>();
      else if (key == "directed") args.directed = value.get<bool>();
      else if (key != "schema_version") throw std::invalid_argument("unknown model key '" + key + "'");
    }
  }
  return graph::BlockModel::create(parse_matrix(B), parse_vector(pi), args.directed);
}

void add_model_options(CLI::App* app, ModelArgs& args) {
  app->add_option("--B", args.B, "block matrix as a JSON nested array");
  app->add_option("--pi", args.pi, "block proportions as a JSON array");
  app->add_option("--n", args.N, "number of nodes");
  app->add_flag("--directed,!--undirected", args.directed, "directed (default) or undirected");
  app->add_option("--config", args.config, "JSON file with B, pi, N and directed");
}

fs::path prepare_out_dir(const std::string& out) {
  const fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

void write_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
  f << j.dump(2) << '\n';
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::size_t count_label_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t rows = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (first && line.rfind("node", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    ++rows;
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubled adjacency spectral embedding toolkit"};
  app.require_subcommand(1);

  // simulate
  ModelArgs sim_model;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "out";
  bool sim_fixed = false;
  auto* simulate = app.add_subcommand("simulate", "sample one SBM graph and its block labels");
  add_model_options(simulate, sim_model);
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--out", sim_out, "output directory (graph.txt, labels.csv)");
  simulate->add_flag("--fixed-sizes", sim_fixed, "use block sizes round(pi * N) instead of sampling");

  // embed
  std::string emb_graph, emb_out = "-";
  std::string emb_method = "dase";
  Index emb_d = 2, emb_k = 2;
  bool emb_scaled = true;
  std::uint64_t emb_seed = 0;
  auto* embed_cmd = app.add_subcommand("embed", "embed a canonical graph file");
  embed_cmd->add_option("--graph", emb_graph, "canonical graph file")->required();
  embed_cmd->add_option("--method", emb_method, "sc, ase or dase")->check(CLI::IsMember({"sc", "ase", "dase"}));
  embed_cmd->add_option("--d", emb_d, "embedding rank for ASE/DASE");
  embed_cmd->add_option("--k", emb_k, "number of clusters (SC dimension)");
  embed_cmd->add_flag("--scaled,!--unscaled", emb_scaled, "scale singular vectors by sqrt(sigma)");
  embed_cmd->add_option("--seed", emb_seed, "solver seed");
  embed_cmd->add_option("--out", emb_out, "embedding CSV (node,coord_0,...); - for stdout");

  // cluster
  std::string cl_embedding, cl_out = "-", cl_clusterer = "kmeans";
  Index cl_k = 2;
  std::uint64_t cl_seed = 0;
  auto* cluster_cmd = app.add_subcommand("cluster", "cluster an embedding CSV");
  cluster_cmd->add_option("--embedding", cl_embedding, "embedding CSV")->required();
  cluster_cmd->add_option("--k", cl_k, "number of clusters");
  cluster_cmd->add_option("--clusterer", cl_clusterer, "kmeans or gmm")->check(CLI::IsMember({"kmeans", "gmm"}));
  cluster_cmd->add_option("--seed", cl_seed, "clustering seed");
  cluster_cmd->add_option("--out", cl_out, "labels CSV (node,label); - for stdout");

  // evaluate
  std::string ev_truth, ev_labels, ev_out = "-";
  auto* evaluate = app.add_subcommand("evaluate", "compare two labelings");
  evaluate->add_option("--truth", ev_truth, "reference labels CSV")->required();
  evaluate->add_option("--labels", ev_labels, "estimated labels CSV")->required();
  evaluate->add_option("--out", ev_out, "metrics JSON; - for stdout");

  // chernoff
  ModelArgs ch_model;
  std::string ch_out = "-";
  auto* chernoff = app.add_subcommand("chernoff", "model Chernoff information for ASE and DASE");
  add_model_options(chernoff, ch_model);
  chernoff->add_option("--out", ch_out, "report JSON; - for stdout");

  // bounds
  ModelArgs bd_model;
  std::string bd_out = "-";
  auto* bounds = app.add_subcommand("bounds", "misclustering bound constants and values");
  add_model_options(bounds, bd_model);
  bounds->add_option("--out", bd_out, "report JSON; - for stdout");

  // sweep
  std::string sw_config, sw_out = "out";
  std::optional<std::uint64_t> sw_seed;
  std::size_t sw_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run an experiment configuration");
  sweep->add_option("--config", sw_config, "experiment JSON")->required();
  sweep->add_option("--out", sw_out, "output directory");
  sweep->add_option("--seed", sw_seed, "override the master seed");
  sweep->add_option("--threads", sw_threads, "worker threads (results do not depend on it)");

  // ingest
  std::string in_edges, in_out = "graph.txt", in_names;
  bool in_directed = true, in_binarize = true;
  auto* ingest = app.add_subcommand("ingest", "convert a tab-separated edge list");
  ingest->add_option("--edges", in_edges, "edge list: source<TAB>target[<TAB>weight]")->required();
  ingest->add_flag("--directed,!--undirected", in_directed, "directed (default) or undirected");
  ingest->add_flag("--binarize,!--strict", in_binarize, "collapse weights and duplicates (default)");
  ingest->add_option("--out", in_out, "canonical graph file");
  ingest->add_option("--names", in_names, "CSV mapping node index to original identifier");

  // heatmap
  std::string hm_graph, hm_labels, hm_out = "heatmap.csv";
  auto* heatmap = app.add_subcommand("heatmap", "permuted adjacency matrix for plotting");
  heatmap->add_option("--graph", hm_graph, "canonical graph file")->required();
  heatmap->add_option("--labels", hm_labels, "labels CSV")->required();
  heatmap->add_option("--out", hm_out, "matrix CSV; a .json sidecar is written next to it");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto model = load_model(sim_model);
      const auto assignment = sim_fixed ? graph::fixed_assignment(model.pi, sim_model.N)
                                        : graph::sample_assignment(model.pi, sim_model.N,
                                                                   derive_seed(sim_seed, stream::assignment, 0));
      const auto A = graph::sample_sbm(model, assignment, derive_seed(sim_seed, stream::graph, 0));
      const fs::path dir = prepare_out_dir(sim_out);
      io::write_graph(dir / "graph.txt", A);
      io::write_labels_csv(dir / "labels.csv", assignment.as_labels());
      std::cerr << "wrote " << A.size() << " nodes, " << A.edge_count() << " edges to " << dir.string() << '\n';
    } else if (embed_cmd->parsed()) {
      const auto A = io::read_graph(fs::path(emb_graph));
      const auto method = embed::parse_method(emb_method);
      const Index dim = method == embed::Method::sc ? emb_k : emb_d;
      const auto e = embed::embed(A, method, dim, emb_scaled, emb_seed);
      if (emb_out == "-") {
        embed::write_embedding_csv(e, std::cout);
      } else {
        std::ofstream f(emb_out);
        if (!f) throw std::runtime_error("cannot open '" + emb_out + "' for writing");
        embed::write_embedding_csv(e, f);
      }
    } else if (cluster_cmd->parsed()) {
      std::ifstream f(cl_embedding);
      if (!f) throw std::runtime_error("cannot open '" + cl_embedding + "'");
      std::vector<std::string> names;
      const Eigen::MatrixXd X = embed::read_embedding_csv(f, &names);
      const auto labels = cluster::assign(X, cl_k, cluster::parse_clusterer(cl_clusterer), cl_seed);
      if (cl_out == "-") {
        io::write_labels_csv(std::cout, labels, names);
      } else {
        io::write_labels_csv(fs::path(cl_out), labels, names);
      }
    } else if (evaluate->parsed()) {
      const std::size_t n = count_label_rows(ev_truth);
      const auto truth = io::read_labels_csv(fs::path(ev_truth), n);
      const auto est = io::read_labels_csv(fs::path(ev_labels), n);
      const auto mis = theory::misclustering(truth, est);
      json j;
      j["schema_version"] = harness::kSchemaVersion;
      j["nodes"] = n;
      j["nmi"] = theory::nmi(truth, est);
      j["misclustering_count"] = mis.count;
      j["misclustering_rate"] = mis.rate;
      write_json(j, ev_out);
    } else if (chernoff->parsed()) {
      const auto model = load_model(ch_model);
      json j;
      j["schema_version"] = harness::kSchemaVersion;
      j["N"] = ch_model.N;
      j["K"] = model.K();
      try {
        j["ci_ase"] = num(theory::chernoff_information(theory::ase_block_moments(model.B, model.pi)));
      } catch (const std::domain_error& e) {
        j["ci_ase"] = nullptr;
        j["ci_ase_reason"] = e.what();
      }
      try {
        const Eigen::VectorXd sizes = model.pi * static_cast<double>(ch_model.N);
        j["ci_dase"] = num(theory::chernoff_information(theory::dase_block_moments(model, sizes)));
      } catch (const std::domain_error& e) {
        j["ci_dase"] = nullptr;
        j["ci_dase_reason"] = e.what();
      }
      write_json(j, ch_out);
    } else if (bounds->parsed()) {
      const auto model = load_model(bd_model);
      const auto sizes = graph::fixed_assignment(model.pi, bd_model.N).sizes;
      Eigen::VectorXd n(static_cast<Index>(sizes.size()));
      for (std::size_t k = 0; k < sizes.size(); ++k) n[static_cast<Index>(k)] = static_cast<double>(sizes[k]);
      const auto c = theory::bound_constants_from_model(model, n);
      json j;
      j["schema_version"] = harness::kSchemaVersion;
      j["N"] = c.N;
      j["d"] = c.d;
      j["b"] = c.b;
      j["btilde"] = c.btilde;
      j["beta"] = c.beta;
      j["beta_hat"] = c.beta_hat;
      j["pi_min"] = c.pi_min;
      j["core_periphery"] = c.core_periphery;
      j["bound_general_dase"] = num(theory::bound_general_dase(c, c.N, model.directed));
      if (c.core_periphery) {
        j["T"] = c.T;
        j["Ttilde"] = c.Ttilde;
        j["T1"] = c.T1;
        j["T2"] = c.T2;
        j["Ttilde1"] = c.Ttilde1;
        j["Ttilde2"] = c.Ttilde2;
        j["bound_core_dase"] = num(theory::bound_core(c, c.N, embed::Method::dase));
        j["bound_core_ase"] = num(theory::bound_core(c, c.N, embed::Method::ase));
      }
      write_json(j, bd_out);
    } else if (sweep->parsed()) {
      auto config = harness::ExperimentConfig::load(sw_config);
      if (sw_seed) config.master_seed = *sw_seed;
      config.threads = sw_threads;
      const fs::path dir = prepare_out_dir(sw_out);
      switch (config.scenario) {
        case harness::Scenario::chernoff_sweep:
          harness::write_chernoff_csv(dir / "chernoff.csv", harness::run_chernoff_sweep(config));
          break;
        case harness::Scenario::real_data: {
          const auto ingested = io::ingest_edge_list(config.edges, config.directed, config.binarize);
          harness::RealDataOptions opt;
          opt.dataset = config.dataset;
          opt.methods = config.methods;
          opt.clusterer = config.clusterer;
          opt.K = config.K;
          opt.d = config.d;
          opt.scaled = config.scaled;
          opt.reseeds = config.reseeds;
          opt.seed = config.master_seed;
          opt.threads = config.threads;
          if (!config.ground_truth.empty()) {
            opt.truth = io::read_labels_csv(config.ground_truth, static_cast<std::size_t>(ingested.A.size()),
                                            ingested.names);
          }
          const auto report = harness::evaluate_real(ingested.A, opt);
          std::ofstream f(dir / "report.json");
          f << report.to_json() << '\n';
          if (!f) throw std::runtime_error("failed writing report.json");
          break;
        }
        default: {
          const auto result = harness::run_sweep(config);
          harness::write_summary_csv(dir / "summary.csv", config, result);
          harness::write_replicate_csv(dir / "replicates.csv", config, result);
          harness::write_runtime_csv(dir / "runtime.csv", result);
          harness::write_sweep_metadata(dir / "metadata.json", config, result);
        }
      }
      std::cerr << "wrote results to " << dir.string() << '\n';
    } else if (ingest->parsed()) {
      const auto r = io::ingest_edge_list(fs::path(in_edges), in_directed, in_binarize);
      io::write_graph(fs::path(in_out), r.A);
      if (!in_names.empty()) {
        std::ofstream f(in_names);
        if (!f) throw std::runtime_error("cannot open '" + in_names + "' for writing");
        f << "node,name\n";
        for (std::size_t i = 0; i < r.names.size(); ++i) f << i << ',' << r.names[i] << '\n';
      }
      json j;
      j["schema_version"] = harness::kSchemaVersion;
      j["nodes"] = r.A.size();
      j["edges"] = r.A.edge_count();
      j["density"] = graph::edge_density(r.A);
      j["lines_read"] = r.lines_read;
      j["self_loops_dropped"] = r.self_loops_dropped;
      j["duplicates_collapsed"] = r.duplicates_collapsed;
      std::cout << j.dump(2) << '\n';
    } else if (heatmap->parsed()) {
      const auto A = io::read_graph(fs::path(hm_graph));
      const auto labels = io::read_labels_csv(fs::path(hm_labels), static_cast<std::size_t>(A.size()));
      io::export_heatmap_matrix(A, labels, fs::path(hm_out));
    }
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
