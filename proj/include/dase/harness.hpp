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

// Experiment orchestration with deterministic seeding and CSV/JSON outputs.

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dase/clustering.hpp"
#include "dase/embedding.hpp"
#include "dase/graph.hpp"
#include "dase/labels.hpp"
#include "dase/rng.hpp"

namespace dase::harness {

using Index = Eigen::Index;

inline constexpr int kSchemaVersion = 1;

enum class Scenario { density_sweep, size_sweep, ratio_sweep, chernoff_sweep, real_data };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

/// Sweep and evaluation settings. Empty grids are filled with the scenario
/// defaults by `parse` and `with_defaults`.
struct ExperimentConfig {
  Scenario scenario = Scenario::density_sweep;
  /// Relative block matrix; the density and size sweeps use B = s * R.
  Eigen::MatrixXd R;
  /// Fixed block matrix for the ratio and Chernoff sweeps.
  Eigen::MatrixXd B;
  double s = 0.05;
  std::vector<double> s_grid;
  Index N = 1000;
  std::vector<Index> N_grid;
  Eigen::VectorXd pi;
  std::vector<double> pi1_grid;
  /// Chernoff sweeps run over "N" (N_grid) or "pi" (pi1_grid at fixed N).
  std::string chernoff_axis = "N";
  bool directed = true;
  std::vector<embed::Method> methods{embed::Method::sc, embed::Method::ase,
                                     embed::Method::dase};
  cluster::Clusterer clusterer = cluster::Clusterer::kmeans;
  int replicates = 50;
  Index d = 2;
  Index K = 2;
  bool scaled = true;
  Seed master_seed = 0;
  /// Draw a fresh block assignment per replicate (otherwise fixed sizes).
  bool resample_assignment = true;
  /// Worker threads; 0 uses the default. Never affects results.
  std::size_t threads = 0;

  // Real-data evaluation.
  std::string dataset;
  std::filesystem::path edges;
  std::filesystem::path ground_truth;
  bool binarize = true;
  int reseeds = 50;

  /// Parses a JSON document. Unknown keys are rejected.
  static ExperimentConfig parse(const std::string& json_text);
  /// Reads a config file; relative edges/ground_truth paths resolve against
  /// the file's directory.
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Copy with empty grids and matrices replaced by the scenario defaults.
  ExperimentConfig with_defaults() const;
  std::string to_json() const;
  void validate() const;
};

/// One simulation setting.
struct GridPoint {
  Index N = 0;
  double s = 0.0;
  double pi1 = 0.0;
  graph::BlockModel model;
  double density = 0.0;  // expected edge density
};

std::vector<GridPoint> grid_points(const ExperimentConfig& config);

struct ReplicateRecord {
  std::size_t point = 0;
  embed::Method method = embed::Method::dase;
  int replicate = 0;
  Seed seed = 0;
  bool ok = false;
  double nmi = 0.0;
  double runtime_seconds = 0.0;
  std::string error;
};

struct SummaryRow {
  Index N = 0;
  double s = 0.0;
  double pi1 = 0.0;
  double density = 0.0;
  embed::Method method = embed::Method::dase;
  cluster::Clusterer clusterer = cluster::Clusterer::kmeans;
  int replicates = 0;  // successful replicates
  int failures = 0;
  double mean_nmi = 0.0;
  double std_nmi = 0.0;  // population standard deviation
  double mean_runtime_seconds = 0.0;
};

struct SweepResult {
  std::vector<GridPoint> points;
  std::vector<SummaryRow> rows;           // grid order, then method order
  std::vector<ReplicateRecord> records;   // point, replicate, method order
};

/// Simulation sweep (any scenario except chernoff_sweep and real_data). Each replicate samples an assignment and a
/// graph once and runs every method on it. Failures are recorded and
/// excluded from the aggregates.
SweepResult run_sweep(const ExperimentConfig& config);

/// run_sweep over the pi1 grid; requires the ratio scenario.
SweepResult run_ratio_sweep(const ExperimentConfig& config);

/// Mean and population standard deviation of the successful records of one
/// (point, method) cell.
SummaryRow aggregate(const std::vector<ReplicateRecord>& records, const GridPoint& point,
                     std::size_t point_index, embed::Method method,
                     cluster::Clusterer clusterer);

struct ChernoffRow {
  Index N = 0;
  double pi1 = 0.0;
  double density = 0.0;
  double ci_ase = 0.0;   // NaN when undefined
  double ci_dase = 0.0;  // NaN when undefined
};

/// Model-based Chernoff information for ASE and DASE over the N or pi1 grid.
/// Rejects models with fewer than two blocks.
std::vector<ChernoffRow> run_chernoff_sweep(const ExperimentConfig& config);

struct RealMethodResult {
  embed::Method method = embed::Method::dase;
  std::vector<double> nmi;  // per clustering reseed, empty without truth
  std::optional<double> nmi_mean;
  std::optional<double> nmi_std;
  /// Mean over reseeds of the plug-in Chernoff information (ASE and DASE).
  std::optional<double> ci;
  ClusterLabels labels;  // partition from the first reseed
  Eigen::VectorXd spectrum;
  std::vector<std::string> warnings;
};

struct RealDatasetReport {
  std::string dataset;
  Index N = 0;
  Index m = 0;
  double density = 0.0;
  bool directed = true;
  Index K = 2;
  Index d = 2;
  cluster::Clusterer clusterer = cluster::Clusterer::kmeans;
  int reseeds = 0;
  int suggested_k = 0;  // profile-likelihood elbow of the adjacency scree
  std::vector<RealMethodResult> methods;
  std::optional<double> ci_ratio;   // CI_DASE / CI_ASE
  std::optional<double> nmi_ratio;  // NMI_DASE / NMI_ASE

  std::string to_json() const;
};

struct RealDataOptions {
  std::string dataset;
  std::vector<embed::Method> methods{embed::Method::ase, embed::Method::dase};
  cluster::Clusterer clusterer = cluster::Clusterer::kmeans;
  Index K = 2;
  Index d = 2;
  bool scaled = true;
  int reseeds = 50;
  Seed seed = 0;
  std::optional<ClusterLabels> truth;
  std::size_t threads = 0;
};

/// Embeds once per method, clusters under `reseeds` seeds, scores NMI against
/// the truth when given and averages the plug-in Chernoff information of the
/// fitted partitions (block moments of A for ASE, of A*A for DASE).
RealDatasetReport evaluate_real(const graph::AdjacencyMatrix& A, const RealDataOptions& options);

// Output files. Numbers use the shortest round-trip decimal form.
void write_summary_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                       const SweepResult& result);
void write_replicate_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                         const SweepResult& result);
void write_runtime_csv(const std::filesystem::path& path, const SweepResult& result);
void write_chernoff_csv(const std::filesystem::path& path, const std::vector<ChernoffRow>& rows);
void write_sweep_metadata(const std::filesystem::path& path, const ExperimentConfig& config,
                          const SweepResult& result);

/// Shortest decimal string that parses back to the same double; "nan" and
/// "inf"/"-inf" for non-finite values.
std::string format_double(double v);

}  // namespace dase::harness
