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

#include "dase/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dase/chernoff.hpp"
#include "dase/metrics.hpp"
#include "dase/model_selection.hpp"
#include "dase/parallel.hpp"
#include "dase/spectral.hpp"
#include "json.hpp"

namespace dase::harness {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::MatrixXd default_R() {
  Eigen::MatrixXd R(2, 2);
  R << 1.0, 0.6, 0.6, 0.3;
  return R;
}

std::vector<double> linspace(double lo, double step, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(std::round((lo + step * i) * 1e12) / 1e12);
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(key) + " must be a nonempty matrix");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw std::invalid_argument(std::string(key) + " rows must have equal length");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json j = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(row);
  }
  return j;
}

json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Eigen::VectorXd two_block_pi(double pi1) { return Eigen::Vector2d(pi1, 1.0 - pi1); }

graph::BlockModel make_model(const Eigen::MatrixXd& B, const Eigen::VectorXd& pi, bool directed) {
  return graph::BlockModel::create(B, pi, directed);
}

SweepResult sweep(const ExperimentConfig& raw) {
  const ExperimentConfig config = raw.with_defaults();
  config.validate();
  SweepResult result;
  result.points = grid_points(config);
  const std::size_t n_points = result.points.size();
  const auto reps = static_cast<std::size_t>(config.replicates);
  const std::size_t n_methods = config.methods.size();
  result.records.resize(n_points * reps * n_methods);

  parallel_for(n_points * reps, [&](std::size_t task) {
    const std::size_t p = task / reps;
    const std::size_t rep = task % reps;
    const GridPoint& point = result.points[p];
    const Seed point_seed = derive_seed(config.master_seed, stream::replicate, p);
    const Seed rep_seed = derive_seed(point_seed, stream::replicate, rep);
    ReplicateRecord* slot = &result.records[task * n_methods];
    for (std::size_t m = 0; m < n_methods; ++m) {
      slot[m].point = p;
      slot[m].method = config.methods[m];
      slot[m].replicate = static_cast<int>(rep);
      slot[m].seed = rep_seed;
    }
    try {
      const graph::CommunityAssignment assignment =
          config.resample_assignment
              ? graph::sample_assignment(point.model.pi, point.N,
                                         derive_seed(rep_seed, stream::assignment, 0))
              : graph::fixed_assignment(point.model.pi, point.N);
      const graph::AdjacencyMatrix A =
          graph::sample_sbm(point.model, assignment, derive_seed(rep_seed, stream::graph, 0));
      const ClusterLabels truth = assignment.as_labels();
      for (std::size_t m = 0; m < n_methods; ++m) {
        ReplicateRecord& rec = slot[m];
        try {
          const auto start = std::chrono::steady_clock::now();
          const embed::Method method = config.methods[m];
          const Index dim = method == embed::Method::sc ? config.K : config.d;
          const embed::Embedding e =
              embed::embed(A, method, dim, config.scaled, derive_seed(rep_seed, stream::embedding, m));
          const ClusterLabels est = cluster::assign(e.coords, config.K, config.clusterer,
                                                    derive_seed(rep_seed, stream::clustering, m));
          rec.runtime_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          rec.nmi = theory::nmi(truth, est);
          rec.ok = true;
        } catch (const std::exception& ex) {
          rec.ok = false;
          rec.error = ex.what();
        }
      }
    } catch (const std::exception& ex) {
      for (std::size_t m = 0; m < n_methods; ++m) {
        slot[m].ok = false;
        slot[m].error = std::string("sampling failed: ") + ex.what();
      }
    }
  }, config.threads);

  for (std::size_t p = 0; p < n_points; ++p) {
    for (embed::Method method : config.methods) {
      result.rows.push_back(aggregate(result.records, result.points[p], p, method, config.clusterer));
    }
  }
  return result;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::density_sweep: return "density_sweep";
    case Scenario::size_sweep: return "size_sweep";
    case Scenario::ratio_sweep: return "ratio_sweep";
    case Scenario::chernoff_sweep: return "chernoff_sweep";
    case Scenario::real_data: return "real_data";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::density_sweep, Scenario::size_sweep, Scenario::ratio_sweep,
                     Scenario::chernoff_sweep, Scenario::real_data}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") c.scenario = parse_scenario(value.get<std::string>());
      else if (key == "R") c.R = matrix_from_json(value, "R");
      else if (key == "B") c.B = matrix_from_json(value, "B");
      else if (key == "s") c.s = value.get<double>();
      else if (key == "s_grid") c.s_grid = value.get<std::vector<double>>();
      else if (key == "N") c.N = value.get<Index>();
      else if (key == "N_grid") c.N_grid = value.get<std::vector<Index>>();
      else if (key == "pi") {
        const auto v = value.get<std::vector<double>>();
        c.pi = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
      } else if (key == "pi1_grid") c.pi1_grid = value.get<std::vector<double>>();
      else if (key == "chernoff_axis") c.chernoff_axis = value.get<std::string>();
      else if (key == "directed") c.directed = value.get<bool>();
      else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : value) c.methods.push_back(embed::parse_method(m.get<std::string>()));
      } else if (key == "clusterer") c.clusterer = cluster::parse_clusterer(value.get<std::string>());
      else if (key == "replicates") c.replicates = value.get<int>();
      else if (key == "d") c.d = value.get<Index>();
      else if (key == "K") c.K = value.get<Index>();
      else if (key == "scaled") c.scaled = value.get<bool>();
      else if (key == "seed") c.master_seed = value.get<Seed>();
      else if (key == "resample_assignment") c.resample_assignment = value.get<bool>();
      else if (key == "threads") c.threads = value.get<std::size_t>();
      else if (key == "dataset") c.dataset = value.get<std::string>();
      else if (key == "edges") c.edges = value.get<std::string>();
      else if (key == "ground_truth") c.ground_truth = value.get<std::string>();
      else if (key == "binarize") c.binarize = value.get<bool>();
      else if (key == "reseeds") c.reseeds = value.get<int>();
      else if (key == "schema_version") {
        if (value.get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema_version");
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c.with_defaults();
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c = parse(buf.str());
  // Relative data paths are relative to the config file.
  const auto base = path.parent_path();
  if (!c.edges.empty() && c.edges.is_relative()) c.edges = base / c.edges;
  if (!c.ground_truth.empty() && c.ground_truth.is_relative()) c.ground_truth = base / c.ground_truth;
  return c;
}

ExperimentConfig ExperimentConfig::with_defaults() const {
  ExperimentConfig c = *this;
  if (c.R.size() == 0) c.R = default_R();
  if (c.pi.size() == 0) c.pi = Eigen::VectorXd::Constant(c.R.rows(), 1.0 / static_cast<double>(c.R.rows()));
  if (c.B.size() == 0) {
    if (c.scenario == Scenario::ratio_sweep) c.B = 0.08 * default_R();
    if (c.scenario == Scenario::chernoff_sweep) c.B = 0.8 * default_R();
  }
  if (c.s_grid.empty()) c.s_grid = linspace(0.01, 0.01, 10);
  if (c.N_grid.empty()) {
    if (c.scenario == Scenario::chernoff_sweep) {
      for (Index n = 200; n <= 2000; n += 200) c.N_grid.push_back(n);
    } else {
      for (Index n = 500; n <= 3000; n += 500) c.N_grid.push_back(n);
    }
  }
  if (c.pi1_grid.empty()) c.pi1_grid = linspace(0.1, 0.1, 9);
  return c;
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (K < 1 || d < 1) throw std::invalid_argument("K and d must be positive");
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (reseeds < 1) throw std::invalid_argument("reseeds must be at least 1");
  if (s_grid.empty() || N_grid.empty() || pi1_grid.empty()) {
    throw std::invalid_argument("grids must be nonempty");
  }
  if (chernoff_axis != "N" && chernoff_axis != "pi") {
    throw std::invalid_argument("chernoff_axis must be \"N\" or \"pi\"");
  }
  for (double p1 : pi1_grid) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw std::invalid_argument("pi1 values must lie in (0, 1)");
  }
  for (Index n : N_grid) {
    if (n < 1) throw std::invalid_argument("N values must be positive");
  }
  if (scenario == Scenario::real_data) {
    if (edges.empty()) throw std::invalid_argument("real_data needs an edges path");
    return;
  }
  // Building every grid point checks that the models are valid.
  const auto points = grid_points(*this);
  for (const auto& p : points) {
    if (scenario != Scenario::chernoff_sweep && p.model.K() != K) {
      throw std::invalid_argument("block matrix size differs from K");
    }
    if (scenario != Scenario::chernoff_sweep && p.N < K) {
      throw std::invalid_argument("N must be at least K");
    }
  }
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = std::string(harness::to_string(scenario));
  j["R"] = matrix_to_json(R);
  if (B.size() > 0) j["B"] = matrix_to_json(B);
  j["s"] = s;
  j["s_grid"] = s_grid;
  j["N"] = N;
  j["N_grid"] = N_grid;
  j["pi"] = std::vector<double>(pi.data(), pi.data() + pi.size());
  j["pi1_grid"] = pi1_grid;
  j["chernoff_axis"] = chernoff_axis;
  j["directed"] = directed;
  j["methods"] = json::array();
  for (auto m : methods) j["methods"].push_back(std::string(embed::to_string(m)));
  j["clusterer"] = std::string(cluster::to_string(clusterer));
  j["replicates"] = replicates;
  j["d"] = d;
  j["K"] = K;
  j["scaled"] = scaled;
  j["seed"] = master_seed;
  j["resample_assignment"] = resample_assignment;
  if (scenario == Scenario::real_data) {
    j["dataset"] = dataset;
    j["edges"] = edges.string();
    if (!ground_truth.empty()) j["ground_truth"] = ground_truth.string();
    j["binarize"] = binarize;
    j["reseeds"] = reseeds;
  }
  return j.dump(2);
}

std::vector<GridPoint> grid_points(const ExperimentConfig& raw) {
  const ExperimentConfig c = raw.with_defaults();
  std::vector<GridPoint> points;
  auto add = [&](Index N, double s, double pi1, const Eigen::MatrixXd& B, const Eigen::VectorXd& pi) {
    GridPoint p;
    p.N = N;
    p.s = s;
    p.pi1 = pi1;
    p.model = make_model(B, pi, c.directed);
    p.density = graph::expected_density(p.model);
    points.push_back(std::move(p));
  };
  switch (c.scenario) {
    case Scenario::density_sweep:
      for (double s : c.s_grid) add(c.N, s, c.pi[0], s * c.R, c.pi);
      break;
    case Scenario::size_sweep:
      for (Index N : c.N_grid) add(N, c.s, c.pi[0], c.s * c.R, c.pi);
      break;
    case Scenario::ratio_sweep:
      if (c.B.rows() != 2) throw std::invalid_argument("ratio sweeps need a two-block B");
      for (double p1 : c.pi1_grid) add(c.N, 0.0, p1, c.B, two_block_pi(p1));
      break;
    case Scenario::chernoff_sweep:
      if (c.chernoff_axis == "N") {
        for (Index N : c.N_grid) add(N, 0.0, c.pi[0], c.B, c.pi);
      } else {
        if (c.B.rows() != 2) throw std::invalid_argument("pi sweeps need a two-block B");
        for (double p1 : c.pi1_grid) add(c.N, 0.0, p1, c.B, two_block_pi(p1));
      }
      break;
    case Scenario::real_data:
      throw std::invalid_argument("real_data configs have no simulation grid");
  }
  return points;
}

SummaryRow aggregate(const std::vector<ReplicateRecord>& records, const GridPoint& point,
                     std::size_t point_index, embed::Method method,
                     cluster::Clusterer clusterer) {
  SummaryRow row;
  row.N = point.N;
  row.s = point.s;
  row.pi1 = point.pi1;
  row.density = point.density;
  row.method = method;
  row.clusterer = clusterer;
  double sum = 0.0, runtime = 0.0;
  std::vector<double> values;
  for (const auto& r : records) {
    if (r.point != point_index || r.method != method) continue;
    if (!r.ok) {
      ++row.failures;
      continue;
    }
    values.push_back(r.nmi);
    sum += r.nmi;
    runtime += r.runtime_seconds;
  }
  row.replicates = static_cast<int>(values.size());
  if (values.empty()) {
    row.mean_nmi = row.std_nmi = row.mean_runtime_seconds = kNaN;
    return row;
  }
  const double n = static_cast<double>(values.size());
  row.mean_nmi = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - row.mean_nmi) * (v - row.mean_nmi);
  row.std_nmi = std::sqrt(ss / n);
  row.mean_runtime_seconds = runtime / n;
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  if (config.scenario == Scenario::chernoff_sweep || config.scenario == Scenario::real_data) {
    throw std::invalid_argument("run_sweep only handles simulation scenarios");
  }
  return sweep(config);
}

SweepResult run_ratio_sweep(const ExperimentConfig& config) {
  if (config.scenario != Scenario::ratio_sweep) {
    throw std::invalid_argument("run_ratio_sweep needs the ratio_sweep scenario");
  }
  return sweep(config);
}

std::vector<ChernoffRow> run_chernoff_sweep(const ExperimentConfig& raw) {
  ExperimentConfig config = raw.with_defaults();
  config.scenario = Scenario::chernoff_sweep;
  if (config.B.rows() < 2) throw std::invalid_argument("Chernoff information needs at least two blocks");
  std::vector<ChernoffRow> rows;
  for (const GridPoint& p : grid_points(config)) {
    ChernoffRow row;
    row.N = p.N;
    row.pi1 = p.pi1;
    row.density = p.density;
    try {
      row.ci_ase = theory::chernoff_information(theory::ase_block_moments(p.model.B, p.model.pi));
    } catch (const std::domain_error&) {
      row.ci_ase = kNaN;
    }
    try {
      const Eigen::VectorXd sizes = p.model.pi * static_cast<double>(p.N);
      row.ci_dase = theory::chernoff_information(theory::dase_block_moments(p.model, sizes));
    } catch (const std::domain_error&) {
      row.ci_dase = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

RealDatasetReport evaluate_real(const graph::AdjacencyMatrix& A, const RealDataOptions& opt) {
  if (opt.reseeds < 1) throw std::invalid_argument("reseeds must be at least 1");
  if (opt.K < 2) throw std::invalid_argument("K must be at least 2");
  if (opt.truth && static_cast<Index>(opt.truth->size()) != A.size()) {
    throw std::invalid_argument("ground truth length differs from the node count");
  }
  RealDatasetReport report;
  report.dataset = opt.dataset;
  report.N = A.size();
  report.m = A.edge_count();
  report.density = graph::edge_density(A);
  report.directed = A.directed();
  report.K = opt.K;
  report.d = opt.d;
  report.clusterer = opt.clusterer;
  report.reseeds = opt.reseeds;

  {
    const Index top = std::min<Index>(10, A.size() - 1);
    if (top >= 3) {
      const auto svd = spectral::truncated_svd(A.matrix(), top, {});
      const std::vector<double> scree(svd.sigma.data(), svd.sigma.data() + svd.sigma.size());
      report.suggested_k = theory::choose_k_profile_likelihood(scree, static_cast<int>(top - 1));
    }
  }

  for (std::size_t mi = 0; mi < opt.methods.size(); ++mi) {
    const embed::Method method = opt.methods[mi];
    RealMethodResult res;
    res.method = method;
    const Index dim = method == embed::Method::sc ? opt.K : opt.d;
    const embed::Embedding e =
        embed::embed(A, method, dim, opt.scaled, derive_seed(opt.seed, stream::embedding, mi));
    res.spectrum = e.spectrum;

    std::vector<ClusterLabels> partitions(static_cast<std::size_t>(opt.reseeds));
    parallel_for(partitions.size(), [&](std::size_t r) {
      partitions[r] = cluster::assign(e.coords, opt.K, opt.clusterer,
                                      derive_seed(derive_seed(opt.seed, stream::clustering, mi),
                                                  stream::restart, r));
    }, opt.threads);
    res.labels = partitions.front();

    if (opt.truth) {
      for (const auto& p : partitions) res.nmi.push_back(theory::nmi(*opt.truth, p));
      double mean = 0.0;
      for (double v : res.nmi) mean += v;
      mean /= static_cast<double>(res.nmi.size());
      double ss = 0.0;
      for (double v : res.nmi) ss += (v - mean) * (v - mean);
      res.nmi_mean = mean;
      res.nmi_std = std::sqrt(ss / static_cast<double>(res.nmi.size()));
    }

    if (method != embed::Method::sc) {
      // Reseeds usually agree, so CI is cached per distinct partition.
      std::map<std::vector<int>, double> cache;
      double total = 0.0;
      bool defined = true;
      for (const auto& p : partitions) {
        auto it = cache.find(p.labels);
        if (it == cache.end()) {
          double ci = kNaN;
          try {
            ci = theory::chernoff_information(
                theory::empirical_block_moments(A, p, method == embed::Method::dase));
          } catch (const std::exception& ex) {
            res.warnings.push_back(std::string("Chernoff information undefined: ") + ex.what());
          }
          it = cache.emplace(p.labels, ci).first;
        }
        if (std::isnan(it->second)) defined = false;
        total += it->second;
      }
      if (defined) res.ci = total / static_cast<double>(partitions.size());
    }
    report.methods.push_back(std::move(res));
  }

  const RealMethodResult* ase = nullptr;
  const RealMethodResult* dase = nullptr;
  for (const auto& r : report.methods) {
    if (r.method == embed::Method::ase) ase = &r;
    if (r.method == embed::Method::dase) dase = &r;
  }
  if (ase && dase) {
    if (ase->ci && dase->ci && *ase->ci > 0.0) report.ci_ratio = *dase->ci / *ase->ci;
    if (ase->nmi_mean && dase->nmi_mean && *ase->nmi_mean > 0.0) {
      report.nmi_ratio = *dase->nmi_mean / *ase->nmi_mean;
    }
  }
  return report;
}

std::string RealDatasetReport::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["dataset"] = dataset;
  j["N"] = N;
  j["m"] = m;
  j["density"] = density;
  j["directed"] = directed;
  j["K"] = K;
  j["d"] = d;
  j["clusterer"] = std::string(cluster::to_string(clusterer));
  j["reseeds"] = reseeds;
  j["suggested_k"] = suggested_k;
  j["methods"] = json::array();
  for (const auto& r : methods) {
    json mj;
    mj["method"] = std::string(embed::to_string(r.method));
    mj["nmi_mean"] = optional_number(r.nmi_mean);
    mj["nmi_std"] = optional_number(r.nmi_std);
    mj["ci"] = optional_number(r.ci);
    mj["spectrum"] = std::vector<double>(r.spectrum.data(), r.spectrum.data() + r.spectrum.size());
    mj["warnings"] = r.warnings;
    j["methods"].push_back(mj);
  }
  j["ci_ratio"] = optional_number(ci_ratio);
  j["nmi_ratio"] = optional_number(nmi_ratio);
  return j.dump(2);
}

void write_summary_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                       const SweepResult& result) {
  auto out = open_out(path);
  out << "scenario,N,s,pi1,density,directed,method,clusterer,replicates,failures,mean_nmi,std_nmi\n";
  for (const auto& r : result.rows) {
    out << to_string(config.scenario) << ',' << r.N << ',' << format_double(r.s) << ','
        << format_double(r.pi1) << ',' << format_double(r.density) << ','
        << (config.directed ? 1 : 0) << ',' << embed::to_string(r.method) << ','
        << cluster::to_string(r.clusterer) << ',' << r.replicates << ',' << r.failures << ','
        << format_double(r.mean_nmi) << ',' << format_double(r.std_nmi) << '\n';
  }
  finish(out, path);
}

void write_replicate_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                         const SweepResult& result) {
  auto out = open_out(path);
  out << "point,N,s,pi1,method,clusterer,replicate,seed,status,nmi,error\n";
  for (const auto& r : result.records) {
    const GridPoint& p = result.points[r.point];
    out << r.point << ',' << p.N << ',' << format_double(p.s) << ',' << format_double(p.pi1) << ','
        << embed::to_string(r.method) << ',' << cluster::to_string(config.clusterer) << ','
        << r.replicate << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ','
        << (r.ok ? format_double(r.nmi) : "") << ',' << csv_escape(r.error) << '\n';
  }
  finish(out, path);
}

void write_runtime_csv(const std::filesystem::path& path, const SweepResult& result) {
  auto out = open_out(path);
  out << "N,s,pi1,method,replicates,mean_runtime_seconds\n";
  for (const auto& r : result.rows) {
    out << r.N << ',' << format_double(r.s) << ',' << format_double(r.pi1) << ','
        << embed::to_string(r.method) << ',' << r.replicates << ','
        << format_double(r.mean_runtime_seconds) << '\n';
  }
  finish(out, path);
}

void write_chernoff_csv(const std::filesystem::path& path, const std::vector<ChernoffRow>& rows) {
  auto out = open_out(path);
  out << "N,pi1,density,ci_ase,ci_dase\n";
  for (const auto& r : rows) {
    out << r.N << ',' << format_double(r.pi1) << ',' << format_double(r.density) << ','
        << format_double(r.ci_ase) << ',' << format_double(r.ci_dase) << '\n';
  }
  finish(out, path);
}

void write_sweep_metadata(const std::filesystem::path& path, const ExperimentConfig& config,
                          const SweepResult& result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = json::parse(config.to_json());
  j["assignment"] = config.resample_assignment ? "resampled per replicate" : "fixed block sizes";
  j["runtime_scope"] = "embedding and clustering only, excluding graph sampling";
  j["std"] = "population";
  j["points"] = result.points.size();
  std::size_t failures = 0;
  for (const auto& r : result.records) failures += r.ok ? 0 : 1;
  j["failed_replicates"] = failures;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

}  // namespace dase::harness
