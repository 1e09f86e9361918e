// Copyright 2026 The qfab Authors
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfab/hw/fabric.hpp"
#include "qfab/ir/dag.hpp"
#include "qfab/route/router.hpp"
#include "qfab/route/transpile.hpp"

namespace qfab::bench {

inline constexpr int kCsvVersion = 1;

struct Workload {
  std::string name;
  ir::CircuitDag dag;
};

/// Every `*.qasm` file in `dir`, sorted by file name.
std::vector<Workload> load_workloads(const std::filesystem::path& dir);

struct NamedTopology {
  std::string name;
  hw::CouplingMap map;
};

struct BenchConfig {
  std::vector<route::Algorithm> algorithms = {route::Algorithm::Sabre, route::Algorithm::Fasst,
                                              route::Algorithm::Mirage,
                                              route::Algorithm::Finesse};
  std::vector<route::PostSelection> post_selections = {route::PostSelection::Native,
                                                       route::PostSelection::Fidelity};
  /// Shared router settings; `algorithm` and `post_selection` are overridden.
  route::RouterConfig router;
  int verify_states = 8;
  double verify_tol = 1e-8;
  /// 0 uses the hardware concurrency.
  int threads = 0;

  void validate() const;
};

/// Which checks a routed circuit passed.
struct Verification {
  bool statevector = false;
  bool unitary = false;
  bool clifford = false;
  double min_overlap = 0.0;
};

/// The post-selected result of one (circuit, topology, algorithm,
/// post-selection) configuration.
struct RunRecord {
  std::string algorithm;
  std::string circuit;
  std::string topology;
  std::string post_selection;
  int num_qubits = 0;
  route::RoutingMetrics metrics;
  Verification verification;
  std::vector<int> initial_layout;
  std::vector<int> output_permutation;
  /// Metrics of every seed, in seed order.
  std::vector<route::RoutingMetrics> trials;
};

struct AggregateRow {
  std::string algorithm;
  std::string circuit;
  std::string topology;
  std::string post_selection;
  double lf_cost = 0.0;
  int depth = 0;
  int swaps = 0;
  int mirrors = 0;
  double pct_delta_lf_vs_sabre = 0.0;
  double pct_delta_depth_vs_sabre = 0.0;
};

/// Mean %-change vs. SABRE for one (algorithm, post-selection), averaged
/// over circuits within each topology and then over topologies.
struct Summary {
  std::string algorithm;
  std::string post_selection;
  double mean_pct_delta_lf = 0.0;
  double mean_pct_delta_depth = 0.0;
  /// Per topology, in first-seen order.
  std::vector<std::pair<std::string, double>> mean_lf_by_topology;
};

struct BenchResult {
  std::vector<RunRecord> runs;
  std::vector<AggregateRow> rows;
  std::vector<Summary> summaries;
};

/// Routes every (circuit, topology, algorithm) once over all seeds,
/// verifies every seed's output, then post-selects per mode.
///
/// Every trial passes the statevector check; Clifford circuits also pass
/// the tableau check and circuits of at most 8 qubits the unitary check on
/// the selected result. Throws VerificationError naming the circuit,
/// topology, algorithm and seed of the first failure.
BenchResult run_bench(const std::vector<Workload>& workloads,
                      const std::vector<NamedTopology>& topologies, const BenchConfig& config);

/// 100 (x - base) / base; 0 when both are 0.
double pct_delta(double x, double base);

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs);
std::vector<Summary> summarize(const std::vector<AggregateRow>& rows);

std::string to_csv(const std::vector<AggregateRow>& rows);
std::string summary_csv(const std::vector<Summary>& summaries);
nlohmann::json to_json(const RunRecord& run);

}  // namespace qfab::bench
