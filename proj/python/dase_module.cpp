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

// Python bindings for the core operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dase/bounds.hpp"
#include "dase/chernoff.hpp"
#include "dase/clustering.hpp"
#include "dase/embedding.hpp"
#include "dase/graph.hpp"
#include "dase/harness.hpp"
#include "dase/io.hpp"
#include "dase/metrics.hpp"
#include "dase/model_selection.hpp"

namespace py = pybind11;
using namespace dase;
using Index = Eigen::Index;

namespace {

ClusterLabels to_labels(const std::vector<int>& labels) { return ClusterLabels::from_vector(labels); }

py::dict summary_row(const harness::SummaryRow& r) {
  py::dict d;
  d["N"] = r.N;
  d["s"] = r.s;
  d["pi1"] = r.pi1;
  d["density"] = r.density;
  d["method"] = std::string(embed::to_string(r.method));
  d["clusterer"] = std::string(cluster::to_string(r.clusterer));
  d["replicates"] = r.replicates;
  d["failures"] = r.failures;
  d["mean_nmi"] = r.mean_nmi;
  d["std_nmi"] = r.std_nmi;
  d["mean_runtime_seconds"] = r.mean_runtime_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dase, m) {
  m.doc() = "Doubled adjacency spectral embedding for directed and undirected SBMs";

  py::class_<graph::AdjacencyMatrix>(m, "Graph")
      .def_static("from_dense", &graph::AdjacencyMatrix::from_dense, py::arg("matrix"), py::arg("directed"))
      .def_static("from_edges", &graph::AdjacencyMatrix::from_edges, py::arg("n"), py::arg("edges"),
                  py::arg("directed"))
      .def_property_readonly("n", &graph::AdjacencyMatrix::size)
      .def_property_readonly("directed", &graph::AdjacencyMatrix::directed)
      .def_property_readonly("edge_count", &graph::AdjacencyMatrix::edge_count)
      .def("dense", &graph::AdjacencyMatrix::dense)
      .def("density", [](const graph::AdjacencyMatrix& A) { return graph::edge_density(A); });

  m.def(
      "sample_sbm",
      [](const Eigen::MatrixXd& B, const Eigen::VectorXd& pi, Index n, bool directed, Seed seed,
         bool fixed_sizes) {
        const auto model = graph::BlockModel::create(B, pi, directed);
        const auto a = fixed_sizes ? graph::fixed_assignment(pi, n)
                                   : graph::sample_assignment(pi, n, derive_seed(seed, stream::assignment, 0));
        auto A = graph::sample_sbm(model, a, derive_seed(seed, stream::graph, 0));
        return py::make_tuple(std::move(A), a.labels);
      },
      py::arg("B"), py::arg("pi"), py::arg("n"), py::arg("directed") = true, py::arg("seed") = 0,
      py::arg("fixed_sizes") = false, "Sample an SBM graph; returns (Graph, block labels).");

  m.def(
      "doubled_adjacency", [](const graph::AdjacencyMatrix& A) { return graph::doubled_adjacency(A).dense(); },
      py::arg("graph"), "Dense A @ A (two-step walk counts).");

  m.def(
      "truncated_svd",
      [](const Eigen::MatrixXd& M, Index d, Seed seed) {
        spectral::SolverOptions opt;
        opt.seed = seed;
        const auto t = spectral::truncated_svd(M, d, opt);
        return py::make_tuple(t.U, t.sigma, t.V);
      },
      py::arg("matrix"), py::arg("d"), py::arg("seed") = 0, "Top-d singular triplets (U, sigma, V).");

  m.def(
      "embed",
      [](const graph::AdjacencyMatrix& A, const std::string& method, Index dim, bool scaled, Seed seed) {
        return embed::embed(A, embed::parse_method(method), dim, scaled, seed).coords;
      },
      py::arg("graph"), py::arg("method") = "dase", py::arg("dim") = 2, py::arg("scaled") = true,
      py::arg("seed") = 0, "Node coordinates for method sc, ase or dase.");

  m.def(
      "cluster",
      [](const Eigen::MatrixXd& X, Index k, const std::string& clusterer, Seed seed) {
        return cluster::assign(X, k, cluster::parse_clusterer(clusterer), seed).labels;
      },
      py::arg("points"), py::arg("k"), py::arg("clusterer") = "kmeans", py::arg("seed") = 0);

  m.def(
      "nmi", [](const std::vector<int>& a, const std::vector<int>& b) { return theory::nmi(to_labels(a), to_labels(b)); },
      py::arg("a"), py::arg("b"));

  m.def(
      "misclustering_rate",
      [](const std::vector<int>& truth, const std::vector<int>& est) {
        return theory::misclustering(to_labels(truth), to_labels(est)).rate;
      },
      py::arg("truth"), py::arg("estimate"));

  m.def(
      "chernoff_ase",
      [](const Eigen::MatrixXd& B, const Eigen::VectorXd& pi) {
        return theory::chernoff_information(theory::ase_block_moments(B, pi));
      },
      py::arg("B"), py::arg("pi"));

  m.def(
      "chernoff_dase",
      [](const Eigen::MatrixXd& B, const Eigen::VectorXd& sizes) {
        return theory::chernoff_information(theory::dase_block_moments(B, sizes));
      },
      py::arg("B"), py::arg("sizes"));

  m.def(
      "bound_constants",
      [](const Eigen::MatrixXd& B, const Eigen::VectorXd& pi, const Eigen::VectorXd& sizes, bool directed) {
        const auto model = graph::BlockModel::create(B, pi, directed);
        const auto c = theory::bound_constants_from_model(model, sizes);
        py::dict d;
        d["N"] = c.N;
        d["d"] = c.d;
        d["b"] = c.b;
        d["btilde"] = c.btilde;
        d["beta"] = c.beta;
        d["beta_hat"] = c.beta_hat;
        d["pi_min"] = c.pi_min;
        d["core_periphery"] = c.core_periphery;
        d["general_dase"] = theory::bound_general_dase(c, c.N, directed);
        if (c.core_periphery) {
          d["T"] = c.T;
          d["Ttilde"] = c.Ttilde;
          d["core_dase"] = theory::bound_core(c, c.N, embed::Method::dase);
          d["core_ase"] = theory::bound_core(c, c.N, embed::Method::ase);
        }
        return d;
      },
      py::arg("B"), py::arg("pi"), py::arg("sizes"), py::arg("directed") = true);

  m.def("choose_k", &theory::choose_k_profile_likelihood, py::arg("values"), py::arg("max_k"),
        "Profile-likelihood elbow of a nonincreasing scree sequence.");

  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        const auto config = harness::ExperimentConfig::parse(config_json);
        py::list rows;
        if (config.scenario == harness::Scenario::chernoff_sweep) {
          for (const auto& r : harness::run_chernoff_sweep(config)) {
            py::dict d;
            d["N"] = r.N;
            d["pi1"] = r.pi1;
            d["density"] = r.density;
            d["ci_ase"] = r.ci_ase;
            d["ci_dase"] = r.ci_dase;
            rows.append(d);
          }
          return rows;
        }
        harness::SweepResult result;
        {
          py::gil_scoped_release release;
          result = harness::run_sweep(config);
        }
        for (const auto& r : result.rows) rows.append(summary_row(r));
        return rows;
      },
      py::arg("config_json"), "Run an experiment configuration given as JSON; returns summary rows.");

  m.def(
      "ingest_edge_list",
      [](const std::string& path, bool directed, bool binarize) {
        auto r = io::ingest_edge_list(std::filesystem::path(path), directed, binarize);
        return py::make_tuple(std::move(r.A), r.names);
      },
      py::arg("path"), py::arg("directed") = true, py::arg("binarize") = true);

  py::register_exception<spectral::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);
}
