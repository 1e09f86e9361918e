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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qfab/bench/bench.hpp"
#include "qfab/common/error.hpp"
#include "qfab/hw/fabric.hpp"
#include "qfab/ir/qasm.hpp"

using namespace qfab;
using namespace qfab::bench;
namespace fs = std::filesystem;

namespace {

std::vector<Workload> micro_workloads() {
  return {
      {"ghz_5", ir::parse_qasm("OPENQASM 2.0; qreg q[5]; h q[0]; cx q[0],q[1]; cx q[1],q[2]; "
                               "cx q[2],q[3]; cx q[3],q[4]; cx q[0],q[4]; cx q[1],q[3];")},
      {"mix_6", ir::parse_qasm("OPENQASM 2.0; qreg q[6]; h q[0]; t q[1]; cx q[0],q[5]; "
                               "rz(0.3) q[5]; cx q[2],q[4]; cx q[1],q[3]; cx q[3],q[5]; "
                               "cz q[0],q[4]; ry(1.1) q[2]; cx q[5],q[2]; cx q[4],q[1];")},
  };
}

std::vector<NamedTopology> micro_topologies() {
  return {{"4q4e", hw::build_snail_fabric(hw::builtin_module("4q4e"), 2)}};
}

BenchConfig micro_config(int threads) {
  BenchConfig c;
  c.router.num_seeds = 4;
  c.router.seed = 11;
  c.threads = threads;
  return c;
}

AggregateRow row(std::string alg, std::string circuit, std::string topo, double lf, int depth,
                 double plf, double pdepth) {
  AggregateRow r;
  r.algorithm = std::move(alg);
  r.circuit = std::move(circuit);
  r.topology = std::move(topo);
  r.post_selection = "native";
  r.lf_cost = lf;
  r.depth = depth;
  r.pct_delta_lf_vs_sabre = plf;
  r.pct_delta_depth_vs_sabre = pdepth;
  return r;
}

}  // namespace

TEST_CASE("percentage deltas") {
  CHECK(pct_delta(90, 100) == doctest::Approx(-10));
  CHECK(pct_delta(0, 0) == 0);
  CHECK(std::isnan(pct_delta(1, 0)));
}

TEST_CASE("config validation") {
  BenchConfig c;
  CHECK_NOTHROW(c.validate());
  c.algorithms.clear();
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = BenchConfig{};
  c.verify_tol = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(run_bench({}, micro_topologies(), BenchConfig{}), ValidationError);
  std::vector<NamedTopology> tiny{{"line", hw::CouplingMap(3, {{0, 1, 0.99}, {1, 2, 0.99}})}};
  CHECK_THROWS_AS(run_bench(micro_workloads(), tiny, BenchConfig{}), ValidationError);
}

TEST_CASE("micro bench shape and verification") {
  const auto r = run_bench(micro_workloads(), micro_topologies(), micro_config(1));
  // 2 circuits x 1 topology x 4 algorithms per post-selection.
  CHECK(r.runs.size() == 16);
  CHECK(r.rows.size() == 16);
  CHECK(r.summaries.size() == 8);
  for (const auto& run : r.runs) {
    CAPTURE(run.circuit);
    CAPTURE(run.algorithm);
    CHECK(run.verification.statevector);
    CHECK(run.verification.unitary);
    CHECK(run.verification.min_overlap >= 1 - 1e-8);
    CHECK(run.trials.size() == 4);
    CHECK(run.verification.clifford == (run.circuit == "ghz_5"));
    const auto j = to_json(run);
    CHECK(j.at("format_version") == kCsvVersion);
    CHECK(j.at("trials").size() == 4);
  }
  for (const auto& row : r.rows)
    if (row.algorithm == "sabre") {
      CHECK(row.pct_delta_lf_vs_sabre == 0);
      CHECK(row.pct_delta_depth_vs_sabre == 0);
    }
  // Fidelity post-selection never does worse on lf_cost than native.
  for (const auto& a : r.rows)
    for (const auto& b : r.rows)
      if (a.algorithm == b.algorithm && a.circuit == b.circuit && a.post_selection == "fidelity" &&
          b.post_selection == "native")
        CHECK(a.lf_cost <= b.lf_cost + 1e-12);
}

TEST_CASE("CSV output is byte-identical across runs and thread counts") {
  const auto a = run_bench(micro_workloads(), micro_topologies(), micro_config(1));
  const auto b = run_bench(micro_workloads(), micro_topologies(), micro_config(3));
  const auto c = run_bench(micro_workloads(), micro_topologies(), micro_config(1));
  CHECK(to_csv(a.rows) == to_csv(b.rows));
  CHECK(to_csv(a.rows) == to_csv(c.rows));
  CHECK(summary_csv(a.summaries) == summary_csv(b.summaries));
  CHECK(to_json(a.runs[5]).dump() == to_json(b.runs[5]).dump());
}

TEST_CASE("summary averages circuits within a topology, then topologies") {
  // t1 has three circuits, t2 one: a flat mean would weight t1 three times.
  const std::vector<AggregateRow> rows{
      row("finesse", "a", "t1", 1.0, 10, -10, 0), row("finesse", "b", "t1", 2.0, 10, -20, 0),
      row("finesse", "c", "t1", 3.0, 10, -30, 0), row("finesse", "a", "t2", 5.0, 10, 10, 4),
  };
  const auto s = summarize(rows);
  REQUIRE(s.size() == 1);
  CHECK(s[0].mean_pct_delta_lf == doctest::Approx((-20.0 + 10.0) / 2));
  CHECK(s[0].mean_pct_delta_depth == doctest::Approx(2.0));
  REQUIRE(s[0].mean_lf_by_topology.size() == 2);
  CHECK(s[0].mean_lf_by_topology[0] == std::pair<std::string, double>{"t1", 2.0});
  CHECK(s[0].mean_lf_by_topology[1].second == 5.0);
}

TEST_CASE("CSV golden output") {
  std::vector<AggregateRow> rows{row("sabre", "ghz", "4q4e", 0.25, 7, 0, 0),
                                 row("finesse", "ghz", "4q4e", 0.2, 6, -20, -14.285714285)};
  rows[1].swaps = 2;
  rows[1].mirrors = 1;
  CHECK(to_csv(rows) ==
        "algorithm,circuit,topology,post_selection,lf_cost,depth,swaps,mirrors,"
        "pct_delta_lf_vs_sabre,pct_delta_depth_vs_sabre\n"
        "sabre,ghz,4q4e,native,0.250000,7,0,0,0.0000,0.0000\n"
        "finesse,ghz,4q4e,native,0.200000,6,2,1,-20.0000,-14.2857\n");
  CHECK(summary_csv(summarize(rows)) ==
        "algorithm,post_selection,topology,mean_lf_cost,mean_pct_delta_lf_vs_sabre,"
        "mean_pct_delta_depth_vs_sabre\n"
        "sabre,native,4q4e,0.250000,,\n"
        "sabre,native,all,,0.0000,0.0000\n"
        "finesse,native,4q4e,0.200000,,\n"
        "finesse,native,all,,-20.0000,-14.2857\n");
}

TEST_CASE("rows are ordered by post-selection, algorithm, topology, circuit") {
  RunRecord s, f;
  s.algorithm = "sabre";
  f.algorithm = "finesse";
  for (RunRecord* r : {&s, &f}) {
    r->circuit = "c";
    r->topology = "t";
    r->post_selection = "native";
  }
  s.metrics.lf_cost = 2.0;
  f.metrics.lf_cost = 1.0;
  const auto rows = aggregate({s, f});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].algorithm == "finesse");
  CHECK(rows[0].pct_delta_lf_vs_sabre == doctest::Approx(-50));
}

TEST_CASE("workloads load sorted by file name") {
  const fs::path dir = fs::temp_directory_path() / "qfab_test_workloads";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "b.qasm") << "OPENQASM 2.0; qreg q[2]; cx q[0],q[1];";
  std::ofstream(dir / "a.qasm") << "OPENQASM 2.0; qreg q[3]; h q[2];";
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto w = load_workloads(dir);
  REQUIRE(w.size() == 2);
  CHECK(w[0].name == "a");
  CHECK(w[0].dag.num_qubits() == 3);
  CHECK(w[1].name == "b");
  fs::remove_all(dir);
  CHECK_THROWS(load_workloads(dir));
}
