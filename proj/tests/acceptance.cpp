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

// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfab/bench/bench.hpp"
#include "qfab/common/error.hpp"
#include "qfab/freq/allocation.hpp"
#include "qfab/freq/calibration.hpp"
#include "qfab/hw/fabric.hpp"
#include "qfab/route/transpile.hpp"
#include "qfab/weyl/weyl.hpp"

using namespace qfab;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = QFAB_SOURCE_DIR;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<bench::NamedTopology> fixture_topologies() {
  std::vector<bench::NamedTopology> out;
  for (const char* name : {"4q4e", "4q5e", "4q6e", "5q7e"}) {
    const hw::Topology t = hw::load_topology(kSource / "fixtures/topologies" / (std::string(name) + ".json"));
    out.push_back({name, hw::build_snail_fabric(t.spec, t.num_modules)});
  }
  return out;
}

const bench::Summary* find(const bench::BenchResult& r, const char* alg, const char* ps) {
  for (const auto& s : r.summaries)
    if (s.algorithm == alg && s.post_selection == ps) return &s;
  return nullptr;
}

hw::CouplingMap random_graph(Rng& rng, int n) {
  std::vector<hw::Edge> edges;
  std::set<std::pair<int, int>> has;
  auto add = [&](int a, int b) {
    if (a == b || has.count({std::min(a, b), std::max(a, b)})) return;
    has.insert({std::min(a, b), std::max(a, b)});
    edges.push_back({a, b, rng.uniform(0.9, 1.0)});
  };
  for (int v = 1; v < n; ++v) add(v, static_cast<int>(rng.below(static_cast<std::uint64_t>(v))));
  const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  for (int e = 0; e < extra; ++e)
    add(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
        static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  return hw::CouplingMap(n, edges);
}

}  // namespace

int main() {
  const auto workloads = bench::load_workloads(kSource / "workloads");
  const auto topologies = fixture_topologies();
  bench::BenchConfig cfg;
  cfg.router.num_seeds = 24;
  cfg.router.seed = 0;

  // 1. Equivalence over the full cross product.
  bench::BenchResult result;
  double bench_seconds = 0;
  bool bench_ok = false;
  std::string bench_detail;
  {
    int min_q = 1 << 30, max_q = 0;
    for (const auto& w : workloads) {
      min_q = std::min(min_q, w.dag.num_qubits());
      max_q = std::max(max_q, w.dag.num_qubits());
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      result = bench::run_bench(workloads, topologies, cfg);
      bench_seconds = seconds_since(t0);
      std::size_t verified = 0, clifford = 0, trials = 0;
      for (const auto& r : result.runs) {
        verified += r.verification.statevector;
        clifford += r.verification.clifford;
        trials += r.trials.size();
      }
      const std::size_t expected = workloads.size() * topologies.size() * cfg.algorithms.size() *
                                   cfg.post_selections.size();
      bench_ok = workloads.size() >= 8 && min_q >= 8 && max_q <= 15 &&
                 result.runs.size() == expected && verified == expected && bench_seconds < 600;
      bench_detail = std::to_string(workloads.size()) + " circuits (" + std::to_string(min_q) +
                     "-" + std::to_string(max_q) + " qubits) x " +
                     std::to_string(topologies.size()) + " topologies x " +
                     std::to_string(cfg.algorithms.size()) + " algorithms x " +
                     std::to_string(cfg.router.num_seeds) + " seeds; every trial verified, " +
                     std::to_string(clifford) + " Clifford records tableau-checked; " +
                     fmt("%.0f s", bench_seconds);
    } catch (const Error& e) {
      bench_detail = e.what();
    }
  }
  report(1, bench_ok, bench_detail);

  // 2. Directional routing claims.
  {
    const auto* fn = find(result, "finesse", "native");
    const auto* mn = find(result, "mirage", "native");
    const auto* ff = find(result, "finesse", "fidelity");
    const bool ok = bench_ok && fn && mn && ff && fn->mean_pct_delta_lf <= -3.0 &&
                    fn->mean_pct_delta_depth <= 0.0 && mn->mean_pct_delta_depth <= -3.0 &&
                    ff->mean_pct_delta_lf <= 0.0;
    report(2, ok,
           fn && mn && ff
               ? fmt("finesse native dlf %.2f%% ddepth %.2f%%; mirage native ddepth %.2f%%; "
                     "finesse fidelity dlf %.2f%%",
                     fn->mean_pct_delta_lf, fn->mean_pct_delta_depth, mn->mean_pct_delta_depth,
                     ff->mean_pct_delta_lf)
               : "bench did not complete");
  }

  // 3. Fidelity-connectivity tradeoff.
  {
    const auto* ff = find(result, "finesse", "fidelity");
    bool ok = bench_ok && ff && !ff->mean_lf_by_topology.empty();
    std::string detail;
    if (ff) {
      std::string best;
      double best_lf = INFINITY;
      for (const auto& [t, lf] : ff->mean_lf_by_topology) {
        detail += t + "=" + fmt("%.4f", lf) + " ";
        if (lf < best_lf) {
          best_lf = lf;
          best = t;
        }
      }
      ok = ok && best == "4q4e";
      detail += "lowest " + best;
    }
    report(3, ok, detail);
  }

  // 4. Frequency allocation.
  {
    const auto params = freq::CostModelParams::calibrate(freq::PhysicalConstants{},
                                                         freq::spectator_catalog());
    const double target[] = {0.996, 0.994, 0.991, 0.940};
    const double tol[] = {0.005, 0.005, 0.005, 0.05};
    bool ok = true;
    double prev = 1.0, max_seconds = 0, sep4 = 0;
    std::string detail;
    for (int n = 2; n <= 5; ++n) {
      const auto t0 = std::chrono::steady_clock::now();
      freq::AllocationOptions opts;
      const auto r = freq::optimize_frequencies(freq::Module::complete(n), params, opts);
      max_seconds = std::max(max_seconds, seconds_since(t0));
      const double f = r.report.geometric_mean_fidelity;
      ok = ok && std::abs(f - target[n - 2]) <= tol[n - 2] && f <= prev;
      prev = f;
      if (n == 4) sep4 = r.report.min_qubit_separation;
      detail += fmt("N=%.0f F=%.4f ", n, f);
    }
    ok = ok && sep4 > 300e6 && max_seconds < 120;
    detail += fmt("N=4 min separation %.1f MHz; slowest size %.1f s", sep4 / 1e6, max_seconds);
    report(4, ok, detail);
  }

  // 5. Calibration anchor.
  {
    const auto params = freq::CostModelParams::calibrate(freq::PhysicalConstants{},
                                                         freq::spectator_catalog());
    const freq::PhysicalConstants c;
    const auto& fit = params.coherent_for(c.coherent_threshold_prefactor);
    double crossing = 0;
    for (double d = 1e6; d < 2e9; d += 1e5)
      if (freq::coherent_infidelity(d, fit.x0, fit.x1) <= 0.01) {
        crossing = d;
        break;
      }
    const double f200 = 1 - freq::coherent_infidelity(200e6, fit.x0, fit.x1);
    report(5, crossing >= 150e6 && crossing <= 250e6 && f200 >= 0.99,
           fmt("F >= 0.99 from %.1f MHz; F(200 MHz) = %.5f", crossing / 1e6, f200));
  }

  // 6. Weyl oracle suite.
  {
    bool ok = true;
    std::string detail;
    for (const char* name : {"cx", "iswap", "sqrt_iswap"}) {
      const auto basis = weyl::BasisGate::from_name(name);
      Rng rng(2026), search(99);
      int mismatches = 0;
      for (int i = 0; i < 200; ++i) {
        const Eigen::Matrix4cd u = oracle::haar4(rng);
        if (weyl::basis_gate_count(u, basis) != oracle::coverage_count(u, basis.unitary(), search))
          ++mismatches;
      }
      ok = ok && mismatches == 0;
      detail += std::string(name) + " " + std::to_string(mismatches) + "/200 mismatches; ";
    }
    using ir::gates::cx;
    const Eigen::Matrix4cd mcx = oracle::mat2(cx(0, 1));
    const Eigen::Matrix4cd msw = oracle::mat2(ir::gates::swap(0, 1));
    const auto sq = weyl::BasisGate::sqrt_iswap();
    const bool table = weyl::basis_gate_count(mcx, sq) == 2 && weyl::basis_gate_count(msw, sq) == 3 &&
                       weyl::basis_gate_count(oracle::mat2(ir::gates::iswap(0, 1)), sq) == 2 &&
                       weyl::basis_gate_count(msw * mcx, sq) == 2 &&
                       weyl::basis_gate_count(msw * mcx, weyl::BasisGate::iswap()) == 1;
    detail += table ? "fixed table holds" : "fixed table broken";
    report(6, ok && table, detail);
  }

  // 7. Structural properties.
  {
    std::string detail;
    // Fidelity distances against exhaustive path enumeration.
    bool dist_ok = true;
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(7));
      const auto m = random_graph(rng, n);
      const int k_swap = 1 + static_cast<int>(rng.below(3));
      const auto d = hw::fidelity_distances(m, hw::log_weights(m), k_swap);
      std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), INFINITY));
      for (const auto& e : m.edges())
        w[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] =
            w[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] =
                -k_swap * std::log(e.fidelity);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          const double b = oracle::brute_force_distance(n, w, s, t);
          if (std::abs(d(s, t) - b) > 1e-12 * std::max(1.0, b)) dist_ok = false;
        }
    }
    detail += dist_ok ? "D_fid ok on 100 graphs; " : "D_fid mismatch; ";

    // Beta = 0 reduction, per seed, on every fixture.
    bool reduce_ok = true;
    int compared = 0;
    const weyl::GateCounter counter(cfg.router.basis);
    for (const auto& topo : topologies)
      for (std::size_t w = 0; w < workloads.size(); w += 3) {
        auto sabre = cfg.router;
        sabre.algorithm = route::Algorithm::Sabre;
        auto fasst = cfg.router;
        fasst.algorithm = route::Algorithm::Fasst;
        fasst.beta = 0.0;
        const auto a = route::run_trials(workloads[w].dag, topo.map, sabre, counter);
        const auto b = route::run_trials(workloads[w].dag, topo.map, fasst, counter);
        for (std::size_t s = 0; s < a.size(); ++s, ++compared)
          reduce_ok = reduce_ok && a[s].swap_trace == b[s].swap_trace &&
                      a[s].initial_layout == b[s].initial_layout;
      }
    detail += "beta=0 traces " + std::string(reduce_ok ? "equal" : "differ") + " on " +
              std::to_string(compared) + " seeds; ";

    bool golomb_ok = true;
    for (int p : {2, 3, 5, 7, 11, 13}) {
      const auto f = freq::golomb_frequencies(p, 1e6, 3.3e9);
      std::set<double> diffs;
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) diffs.insert(std::abs(f[j] - f[i]));
      golomb_ok = golomb_ok && diffs.size() == static_cast<std::size_t>(p * (p - 1) / 2);
    }
    detail += golomb_ok ? "Golomb ok; " : "Golomb broken; ";

    bool compose_ok = true;
    Rng crng(3);
    for (int i = 0; i < 1000; ++i) {
      const double a = crng.uniform(0, 1), b = crng.uniform(0, 1);
      compose_ok = compose_ok && std::abs(freq::compose_infidelity(a, b) - (a + b - a * b)) < 1e-15;
    }
    detail += compose_ok ? "compose ok; " : "compose broken; ";

    bool determinism_ok = false;
    if (bench_ok) {
      const auto again = bench::run_bench(workloads, topologies, cfg);
      determinism_ok = bench::to_csv(again.rows) == bench::to_csv(result.rows) &&
                       bench::summary_csv(again.summaries) == bench::summary_csv(result.summaries);
    }
    detail += determinism_ok ? "bench CSV byte-identical on repeat" : "bench CSV differs on repeat";
    report(7, dist_ok && reduce_ok && golomb_ok && compose_ok && determinism_ok, detail);
  }

  return failures == 0 ? 0 : 1;
}
