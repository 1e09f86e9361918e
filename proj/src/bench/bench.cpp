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

#include "qfab/bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <thread>
#include <tuple>

#include "qfab/common/error.hpp"
#include "qfab/ir/qasm.hpp"
#include "qfab/verify/equivalence.hpp"
#include "qfab/weyl/weyl.hpp"

namespace qfab::bench {

namespace fs = std::filesystem;

std::vector<Workload> load_workloads(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ValidationError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".qasm")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Workload> out;
  for (const auto& f : files) {
    try {
      out.push_back({f.stem().string(), ir::parse_qasm(hw::read_file(f))});
    } catch (const ParseError& e) {
      throw ValidationError(f.string() + ": " + e.what());
    }
  }
  if (out.empty()) throw ValidationError("no .qasm files in " + dir.string());
  return out;
}

void BenchConfig::validate() const {
  if (algorithms.empty()) throw ValidationError("bench needs at least one algorithm");
  if (post_selections.empty()) throw ValidationError("bench needs at least one post-selection");
  if (verify_states < 1) throw ValidationError("verify_states must be at least 1");
  if (!(verify_tol > 0)) throw ValidationError("verify_tol must be positive");
  if (threads < 0) throw ValidationError("threads must be non-negative");
  router.validate();
}

namespace {

struct Task {
  std::size_t workload = 0;
  std::size_t topology = 0;
  route::Algorithm algorithm = route::Algorithm::Sabre;
};

std::string describe(const std::string& circuit, const std::string& topology,
                     route::Algorithm alg, int seed) {
  return "circuit " + circuit + ", topology " + topology + ", algorithm " +
         std::string(route::algorithm_name(alg)) + ", seed " + std::to_string(seed);
}

std::vector<RunRecord> run_task(const Task& task, const Workload& w, const NamedTopology& topo,
                                const verify::StatevectorOracle& oracle, bool clifford,
                                const BenchConfig& config, const weyl::GateCounter& counter) {
  route::RouterConfig rc = config.router;
  rc.algorithm = task.algorithm;
  std::vector<route::RoutingResult> trials;
  if (route::is_conformant(w.dag, topo.map))
    trials.push_back(route::transpile(w.dag, topo.map, rc, counter));
  else
    trials = route::run_trials(w.dag, topo.map, rc, counter);

  std::vector<double> overlap(trials.size());
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& r = trials[t];
    const auto init = r.initial_layout.as_permutation();
    overlap[t] = oracle.min_overlap(r.circuit, init, r.output_permutation);
    if (!(overlap[t] >= 1.0 - config.verify_tol))
      throw VerificationError("statevector check failed: " +
                              describe(w.name, topo.name, task.algorithm, r.metrics.seed));
    if (clifford && !verify::clifford_equivalent(w.dag, r.circuit, init, r.output_permutation))
      throw VerificationError("tableau check failed: " +
                              describe(w.name, topo.name, task.algorithm, r.metrics.seed));
  }

  std::vector<route::RoutingMetrics> all;
  for (const auto& r : trials) all.push_back(r.metrics);

  std::vector<RunRecord> out;
  for (route::PostSelection ps : config.post_selections) {
    const std::size_t k = route::select_trial(trials, task.algorithm, ps);
    const auto& r = trials[k];
    RunRecord rec;
    rec.algorithm = std::string(route::algorithm_name(task.algorithm));
    rec.circuit = w.name;
    rec.topology = topo.name;
    rec.post_selection = std::string(route::post_selection_name(ps));
    rec.num_qubits = w.dag.num_qubits();
    rec.metrics = r.metrics;
    rec.verification.statevector = true;
    rec.verification.min_overlap = overlap[k];
    rec.verification.clifford = clifford;
    if (w.dag.num_qubits() <= verify::kMaxUnitaryWidth) {
      if (!verify::unitary_equivalent(w.dag, r.circuit, r.initial_layout.as_permutation(),
                                      r.output_permutation, config.verify_tol))
        throw VerificationError("unitary check failed: " +
                                describe(w.name, topo.name, task.algorithm, r.metrics.seed));
      rec.verification.unitary = true;
    }
    rec.initial_layout = r.initial_layout.logical_to_physical();
    rec.output_permutation = r.output_permutation.physical_to_logical;
    rec.trials = all;
    out.push_back(std::move(rec));
  }
  return out;
}

std::string fmt(double x, int digits) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
  return s;
}

}  // namespace

BenchResult run_bench(const std::vector<Workload>& workloads,
                      const std::vector<NamedTopology>& topologies, const BenchConfig& config) {
  config.validate();
  if (workloads.empty()) throw ValidationError("bench needs at least one workload");
  if (topologies.empty()) throw ValidationError("bench needs at least one topology");
  for (const auto& w : workloads)
    for (const auto& t : topologies)
      if (w.dag.num_qubits() > t.map.num_physical())
        throw ValidationError("circuit " + w.name + " needs " +
                              std::to_string(w.dag.num_qubits()) + " qubits; topology " +
                              t.name + " has " + std::to_string(t.map.num_physical()));

  const weyl::GateCounter counter(config.router.basis);
  std::vector<std::unique_ptr<verify::StatevectorOracle>> oracles;
  std::vector<bool> clifford;
  for (const auto& w : workloads) {
    if (w.dag.num_qubits() > verify::kMaxStatevectorWidth)
      throw ValidationError("circuit " + w.name + " exceeds the statevector width limit");
    oracles.push_back(std::make_unique<verify::StatevectorOracle>(w.dag, config.verify_states,
                                                                  config.router.seed));
    clifford.push_back(verify::is_clifford_circuit(w.dag));
  }

  std::vector<Task> tasks;
  for (std::size_t w = 0; w < workloads.size(); ++w)
    for (std::size_t t = 0; t < topologies.size(); ++t)
      for (route::Algorithm a : config.algorithms) tasks.push_back({w, t, a});

  std::vector<std::vector<RunRecord>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const Task& task = tasks[i];
      try {
        results[i] = run_task(task, workloads[task.workload], topologies[task.topology],
                              *oracles[task.workload], clifford[task.workload], config, counter);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  BenchResult out;
  for (auto& r : results)
    for (auto& rec : r) out.runs.push_back(std::move(rec));
  out.rows = aggregate(out.runs);
  out.summaries = summarize(out.rows);
  return out;
}

double pct_delta(double x, double base) {
  if (x == base) return 0.0;
  if (base == 0.0) return std::nan("");
  return 100.0 * (x - base) / base;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs) {
  std::map<std::tuple<std::string, std::string, std::string>, const RunRecord*> sabre;
  for (const auto& r : runs)
    if (r.algorithm == route::algorithm_name(route::Algorithm::Sabre))
      sabre[{r.circuit, r.topology, r.post_selection}] = &r;

  std::vector<AggregateRow> rows;
  for (const auto& r : runs) {
    AggregateRow row;
    row.algorithm = r.algorithm;
    row.circuit = r.circuit;
    row.topology = r.topology;
    row.post_selection = r.post_selection;
    row.lf_cost = r.metrics.lf_cost;
    row.depth = r.metrics.depth;
    row.swaps = r.metrics.swap_count;
    row.mirrors = r.metrics.mirror_count;
    const auto it = sabre.find({r.circuit, r.topology, r.post_selection});
    if (it == sabre.end()) {
      row.pct_delta_lf_vs_sabre = std::nan("");
      row.pct_delta_depth_vs_sabre = std::nan("");
    } else {
      row.pct_delta_lf_vs_sabre = pct_delta(row.lf_cost, it->second->metrics.lf_cost);
      row.pct_delta_depth_vs_sabre =
          pct_delta(static_cast<double>(row.depth), static_cast<double>(it->second->metrics.depth));
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
    return std::tie(a.post_selection, a.algorithm, a.topology, a.circuit) <
           std::tie(b.post_selection, b.algorithm, b.topology, b.circuit);
  });
  return rows;
}

std::vector<Summary> summarize(const std::vector<AggregateRow>& rows) {
  struct Acc {
    double lf = 0, pct_lf = 0, pct_depth = 0;
    int n = 0;
  };
  using Key = std::pair<std::string, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<std::string>> topo_order;
  std::map<std::tuple<std::string, std::string, std::string>, Acc> acc;
  for (const auto& r : rows) {
    const Key k{r.algorithm, r.post_selection};
    if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);
    auto& topos = topo_order[k];
    if (std::find(topos.begin(), topos.end(), r.topology) == topos.end())
      topos.push_back(r.topology);
    Acc& a = acc[{r.algorithm, r.post_selection, r.topology}];
    a.lf += r.lf_cost;
    a.pct_lf += r.pct_delta_lf_vs_sabre;
    a.pct_depth += r.pct_delta_depth_vs_sabre;
    ++a.n;
  }
  std::vector<Summary> out;
  for (const Key& k : order) {
    Summary s;
    s.algorithm = k.first;
    s.post_selection = k.second;
    const auto& topos = topo_order[k];
    for (const auto& t : topos) {
      const Acc& a = acc[{k.first, k.second, t}];
      s.mean_pct_delta_lf += a.pct_lf / a.n;
      s.mean_pct_delta_depth += a.pct_depth / a.n;
      s.mean_lf_by_topology.emplace_back(t, a.lf / a.n);
    }
    s.mean_pct_delta_lf /= static_cast<double>(topos.size());
    s.mean_pct_delta_depth /= static_cast<double>(topos.size());
    out.push_back(std::move(s));
  }
  return out;
}

std::string to_csv(const std::vector<AggregateRow>& rows) {
  std::string s =
      "algorithm,circuit,topology,post_selection,lf_cost,depth,swaps,mirrors,"
      "pct_delta_lf_vs_sabre,pct_delta_depth_vs_sabre\n";
  for (const auto& r : rows) {
    s += r.algorithm + "," + r.circuit + "," + r.topology + "," + r.post_selection + "," +
         fmt(r.lf_cost, 6) + "," + std::to_string(r.depth) + "," + std::to_string(r.swaps) +
         "," + std::to_string(r.mirrors) + "," + fmt(r.pct_delta_lf_vs_sabre, 4) + "," +
         fmt(r.pct_delta_depth_vs_sabre, 4) + "\n";
  }
  return s;
}

std::string summary_csv(const std::vector<Summary>& summaries) {
  std::string s = "algorithm,post_selection,topology,mean_lf_cost,mean_pct_delta_lf_vs_sabre,"
                  "mean_pct_delta_depth_vs_sabre\n";
  for (const auto& m : summaries) {
    for (const auto& [topo, lf] : m.mean_lf_by_topology)
      s += m.algorithm + "," + m.post_selection + "," + topo + "," + fmt(lf, 6) + ",,\n";
    s += m.algorithm + "," + m.post_selection + ",all,," + fmt(m.mean_pct_delta_lf, 4) + "," +
         fmt(m.mean_pct_delta_depth, 4) + "\n";
  }
  return s;
}

nlohmann::json to_json(const RunRecord& run) {
  auto metrics = [](const route::RoutingMetrics& m) {
    return nlohmann::json{{"seed", m.seed},
                          {"lf_cost", m.lf_cost},
                          {"depth", m.depth},
                          {"swaps", m.swap_count},
                          {"mirrors", m.mirror_count}};
  };
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& m : run.trials) trials.push_back(metrics(m));
  return {{"format_version", kCsvVersion},
          {"algorithm", run.algorithm},
          {"circuit", run.circuit},
          {"topology", run.topology},
          {"post_selection", run.post_selection},
          {"num_qubits", run.num_qubits},
          {"selected", metrics(run.metrics)},
          {"verification",
           {{"statevector", run.verification.statevector},
            {"unitary", run.verification.unitary},
            {"clifford", run.verification.clifford},
            {"min_overlap", run.verification.min_overlap}}},
          {"initial_layout", run.initial_layout},
          {"output_permutation", run.output_permutation},
          {"trials", trials}};
}

}  // namespace qfab::bench
