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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dase/harness.hpp"
#include "dase/io.hpp"
#include "dase/metrics.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace dase;
using namespace dase::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dase_harness_" + name);
}

ExperimentConfig small_config() {
  return ExperimentConfig::parse(R"({
    "scenario": "density_sweep",
    "s_grid": [0.1, 0.2],
    "N": 120,
    "replicates": 3,
    "seed": 11
  })");
}

}  // namespace

TEST_CASE("config parsing and defaults") {
  const auto c = ExperimentConfig::parse(R"({"scenario": "density_sweep"})");
  CHECK(c.R.rows() == 2);
  CHECK(c.R(0, 1) == doctest::Approx(0.6));
  CHECK(c.s_grid.size() == 10);
  CHECK(c.s_grid.front() == doctest::Approx(0.01));
  CHECK(c.s_grid.back() == doctest::Approx(0.10));
  CHECK(c.pi.size() == 2);
  CHECK(c.methods.size() == 3);

  const auto ratio = ExperimentConfig::parse(R"({"scenario": "ratio_sweep"})");
  CHECK(ratio.B(0, 0) == doctest::Approx(0.08));
  CHECK(ratio.pi1_grid.size() == 9);

  const auto chern = ExperimentConfig::parse(R"({"scenario": "chernoff_sweep"})");
  CHECK(chern.B(1, 1) == doctest::Approx(0.24));
  CHECK(chern.N_grid.front() == 200);
  CHECK(chern.N_grid.back() == 2000);

  CHECK_THROWS_AS(ExperimentConfig::parse(R"({"scenario": "density_sweep", "bogus": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse(R"({"scenario": "nope"})"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse(R"({"replicates": "many"})"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse("{"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse(R"({"schema_version": 99})"), std::invalid_argument);

  const auto again = ExperimentConfig::parse(c.to_json());
  CHECK(again.to_json() == c.to_json());
}

TEST_CASE("grid points") {
  const auto points = grid_points(small_config());
  REQUIRE(points.size() == 2);
  CHECK(points[0].model.B(0, 0) == doctest::Approx(0.1));
  CHECK(points[1].density == doctest::Approx(0.2 * (0.25 + 0.5 * 0.6 + 0.25 * 0.3)));
}

TEST_CASE("single point, single replicate") {
  auto c = ExperimentConfig::parse(R"({"scenario": "density_sweep", "s_grid": [0.3], "N": 80,
                                       "replicates": 1, "methods": ["dase"]})");
  const auto r = run_sweep(c);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].replicates + r.rows[0].failures == 1);
  if (r.rows[0].replicates == 1) CHECK(r.rows[0].std_nmi == 0.0);
  CHECK(r.records.size() == 1);
}

TEST_CASE("sweeps are reproducible regardless of thread count") {
  auto c = small_config();
  c.threads = 1;
  const auto a = run_sweep(c);
  c.threads = 4;
  const auto b = run_sweep(c);
  const auto pa = temp_path("a.csv"), pb = temp_path("b.csv");
  write_summary_csv(pa, c, a);
  write_summary_csv(pb, c, b);
  CHECK(slurp(pa) == slurp(pb));
  write_replicate_csv(pa, c, a);
  write_replicate_csv(pb, c, b);
  CHECK(slurp(pa) == slurp(pb));
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);

  // Every method sees the same graph, so record seeds agree across methods.
  REQUIRE(a.records.size() == 2 * 3 * 3);
  CHECK(a.records[0].seed == a.records[1].seed);
  CHECK(a.records[0].seed != a.records[3].seed);

  // A different master seed changes the outcome.
  c.master_seed = 12;
  const auto d = run_sweep(c);
  CHECK(d.records[0].seed != a.records[0].seed);
}

TEST_CASE("aggregation matches the replicate records") {
  const auto c = small_config();
  const auto r = run_sweep(c);
  for (const auto& row : r.rows) {
    std::vector<double> values;
    for (const auto& rec : r.records) {
      const auto& p = r.points[rec.point];
      if (p.s == row.s && rec.method == row.method && rec.ok) values.push_back(rec.nmi);
    }
    REQUIRE(static_cast<int>(values.size()) == row.replicates);
    double mean = 0;
    for (double v : values) mean += v;
    mean /= values.size();
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    CHECK(row.mean_nmi == doctest::Approx(mean).epsilon(1e-12));
    CHECK(row.std_nmi == doctest::Approx(std::sqrt(var / values.size())).epsilon(1e-12));
  }
}

TEST_CASE("aggregate excludes failures") {
  GridPoint p;
  p.N = 10;
  std::vector<ReplicateRecord> recs(4);
  recs[0].ok = true;
  recs[0].nmi = 0.2;
  recs[1].ok = true;
  recs[1].nmi = 0.6;
  recs[2].ok = false;
  recs[2].nmi = 99;
  recs[3].ok = true;
  recs[3].nmi = 5;
  recs[3].method = embed::Method::ase;
  const auto row = aggregate(recs, p, 0, embed::Method::dase, cluster::Clusterer::kmeans);
  CHECK(row.replicates == 2);
  CHECK(row.failures == 1);
  CHECK(row.mean_nmi == doctest::Approx(0.4));
  CHECK(row.std_nmi == doctest::Approx(0.2));
  const auto none = aggregate({}, p, 0, embed::Method::dase, cluster::Clusterer::kmeans);
  CHECK(std::isnan(none.mean_nmi));
}

TEST_CASE("ratio sweep") {
  auto c = ExperimentConfig::parse(R"({"scenario": "ratio_sweep", "pi1_grid": [0.3, 0.7], "N": 100,
                                       "replicates": 2, "methods": ["ase", "dase"]})");
  const auto r = run_ratio_sweep(c);
  CHECK(r.rows.size() == 4);
  CHECK(r.points[0].pi1 == doctest::Approx(0.3));
  CHECK_THROWS_AS(run_ratio_sweep(small_config()), std::invalid_argument);
}

TEST_CASE("Chernoff sweep") {
  auto c = ExperimentConfig::parse(R"({"scenario": "chernoff_sweep", "chernoff_axis": "pi"})");
  const auto rows = run_chernoff_sweep(c);
  REQUIRE(rows.size() == 9);
  CHECK(rows.front().density == doctest::Approx(0.2888));
  CHECK(rows.back().density == doctest::Approx(0.7368));
  for (const auto& row : rows) CHECK(row.ci_dase > row.ci_ase);

  const auto by_n = run_chernoff_sweep(ExperimentConfig::parse(R"({"scenario": "chernoff_sweep"})"));
  REQUIRE(by_n.size() == 10);
  for (std::size_t i = 1; i < by_n.size(); ++i) {
    CHECK(by_n[i].ci_ase == doctest::Approx(by_n[0].ci_ase));
    CHECK(by_n[i].ci_dase > by_n[i - 1].ci_dase);
  }

  CHECK_THROWS_AS(run_chernoff_sweep(ExperimentConfig::parse(
                      R"({"scenario": "chernoff_sweep", "B": [[0.5]], "pi": [1.0], "K": 1})")),
                  std::invalid_argument);

  const auto path = temp_path("chernoff.csv");
  write_chernoff_csv(path, rows);
  CHECK(slurp(path).rfind("N,pi1,density,ci_ase,ci_dase\n", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("real-data evaluation on a planted partition") {
  const Index N = 120;
  std::vector<int> truth(N);
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < N; ++i) truth[i] = i < 60 ? 0 : 1;
  std::mt19937 gen(5);
  std::bernoulli_distribution in(0.5), out(0.02);
  for (Index i = 0; i < N; ++i)
    for (Index j = 0; j < N; ++j)
      if (i != j && (truth[i] == truth[j] ? in(gen) : out(gen))) edges.emplace_back(i, j);
  const auto A = graph::AdjacencyMatrix::from_edges(N, edges, true);
  RealDataOptions opt;
  opt.dataset = "planted";
  opt.reseeds = 5;
  opt.truth = ClusterLabels{truth, 2};
  const auto rep = evaluate_real(A, opt);
  REQUIRE(rep.methods.size() == 2);
  for (const auto& m : rep.methods) {
    CHECK(m.nmi.size() == 5);
    CHECK(*m.nmi_mean == doctest::Approx(1.0));
    CHECK(*m.nmi_std == doctest::Approx(0.0));
    REQUIRE(m.ci.has_value());
    CHECK(*m.ci > 0.0);
  }
  REQUIRE(rep.ci_ratio.has_value());
  CHECK(*rep.ci_ratio == doctest::Approx(*rep.methods[1].ci / *rep.methods[0].ci));
  CHECK(rep.suggested_k == 2);
  CHECK(rep.to_json().find("\"planted\"") != std::string::npos);

  // Ratios equal the quotient of their serialized operands.
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["ci_ratio"].get<double>() ==
        j["methods"][1]["ci"].get<double>() / j["methods"][0]["ci"].get<double>());
  CHECK(j["nmi_ratio"].get<double>() ==
        j["methods"][1]["nmi_mean"].get<double>() / j["methods"][0]["nmi_mean"].get<double>());

  RealDataOptions bad = opt;
  bad.K = 1;
  CHECK_THROWS_AS(evaluate_real(A, bad), std::invalid_argument);
  bad = opt;
  bad.truth = ClusterLabels{{0, 1}, 2};
  CHECK_THROWS_AS(evaluate_real(A, bad), std::invalid_argument);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("heatmap of a core-periphery sample puts the core top-left") {
  Eigen::MatrixXd B(2, 2);
  B << 0.4, 0.2, 0.2, 0.05;
  const auto model = graph::BlockModel::create(B, Eigen::Vector2d(0.5, 0.5), true);
  const auto a = graph::fixed_assignment(model.pi, 200);
  const auto A = graph::sample_sbm(model, a, 17);
  const auto e = embed::embed(A, embed::Method::dase, 2, true, 1);
  const auto labels = cluster::kmeans(e.coords, 2, {}, 2).labels;
  const auto layout = io::heatmap_layout(A, labels);
  REQUIRE(layout.blocks.size() == 2);
  CHECK(layout.blocks[0].density > 0.3);
  CHECK(layout.blocks[1].density < 0.1);
  // The first block holds the true core nodes.
  int core = 0;
  for (Index i = layout.blocks[0].start; i < layout.blocks[0].end; ++i) core += a.labels[layout.order[i]] == 0;
  CHECK(core == layout.blocks[0].end - layout.blocks[0].start);
}
