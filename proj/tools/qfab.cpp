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

// qfab: frequency allocation, routing, verification and benchmark sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qfab/bench/bench.hpp"
#include "qfab/common/error.hpp"
#include "qfab/freq/allocation.hpp"
#include "qfab/hw/fabric.hpp"
#include "qfab/ir/qasm.hpp"
#include "qfab/route/transpile.hpp"
#include "qfab/verify/equivalence.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qfab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Options that may also be set from the `--config` JSON file. Flags given
/// on the command line win over the file, which wins over defaults.
class Settings {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& var, const std::string& desc) {
    CLI::Option* opt = app->add_option("--" + name, var, desc)->capture_default_str();
    bind(opt, name, var);
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& desc) {
    CLI::Option* opt = app->add_flag("--" + name, var, desc);
    bind(opt, name, var);
    return opt;
  }

  /// Apply `section` keys for every option the command line left unset.
  void apply(const json& section) const {
    for (const auto& e : entries_) {
      if (e.opt->count() > 0 || !section.contains(e.key)) continue;
      try {
        e.set(section.at(e.key));
      } catch (const json::exception& ex) {
        throw UsageError("config field '" + e.key + "': " + ex.what());
      }
    }
  }

 private:
  struct Entry {
    CLI::Option* opt;
    std::string key;
    std::function<void(const json&)> set;
  };

  template <class T>
  void bind(CLI::Option* opt, std::string name, T& var) {
    std::replace(name.begin(), name.end(), '-', '_');
    entries_.push_back({opt, name, [&var](const json& j) { var = j.get<T>(); }});
  }

  std::vector<Entry> entries_;
};

/// Flat keys of the config file overlaid with its `<command>` object.
json config_section(const std::string& path, const std::string& command) {
  if (path.empty()) return json::object();
  json j;
  try {
    j = json::parse(hw::read_file(path));
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!j.is_object()) throw UsageError(path + ": config must be a JSON object");
  json out = json::object();
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!it.value().is_object()) out[it.key()] = it.value();
  if (j.contains(command)) {
    if (!j.at(command).is_object()) throw UsageError("config field '" + command + "' must be an object");
    for (auto it = j.at(command).begin(); it != j.at(command).end(); ++it)
      out[it.key()] = it.value();
  }
  return out;
}

std::string read_input(const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError("no such file: " + path);
  return hw::read_file(path);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

std::string ints_to_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> ints_from_string(const std::string& s, const std::string& what) {
  std::istringstream is(s);
  std::vector<int> out;
  int x;
  while (is >> x) out.push_back(x);
  if (!is.eof()) throw UsageError("malformed " + what + " metadata");
  return out;
}

bench::NamedTopology resolve_topology(const std::string& spec, int num_modules) {
  const auto names = hw::builtin_module_names();
  if (std::find(names.begin(), names.end(), spec) != names.end())
    return {spec, hw::build_snail_fabric(hw::builtin_module(spec), num_modules)};
  if (!fs::is_regular_file(spec))
    throw UsageError("topology '" + spec + "' is neither a builtin module nor a file");
  const hw::Topology t = hw::load_topology(spec);
  return {t.spec.name, t.build()};
}

void apply_router_settings(route::RouterConfig& rc, const std::string& algorithm,
                           const std::string& post_selection, const std::string& basis) {
  rc.algorithm = route::algorithm_from_name(algorithm);
  rc.post_selection = route::post_selection_from_name(post_selection);
  rc.basis = weyl::BasisGate::from_name(basis);
}

// ---------------------------------------------------------------- allocate

struct AllocateArgs {
  std::string config;
  std::vector<int> sizes = {2, 3, 4, 5};
  double delta_q_mhz = 200.0;
  int drop_worst = 0;
  int restarts = 16;
  int max_iterations = 10000;
  std::uint64_t seed = 0;
  int num_modules = 4;
  double q_lo_ghz = 3.3, q_hi_ghz = 5.7, s_lo_ghz = 4.2, s_hi_ghz = 4.7;
  std::string constants;
  std::string out = "out";
};

int cmd_allocate(const AllocateArgs& a) {
  freq::PhysicalConstants pc;
  if (!a.constants.empty()) pc = freq::constants_from_json(json::parse(read_input(a.constants)));
  pc.validate();
  const auto catalog = freq::spectator_catalog();
  const auto params = freq::CostModelParams::calibrate(pc, catalog);

  freq::AllocationOptions opts;
  opts.bounds = {a.q_lo_ghz * freq::kGHz, a.q_hi_ghz * freq::kGHz, a.s_lo_ghz * freq::kGHz,
                 a.s_hi_ghz * freq::kGHz};
  opts.bounds.validate();
  opts.delta_q = a.delta_q_mhz * freq::kMHz;
  opts.k = a.drop_worst;
  opts.restarts = a.restarts;
  opts.max_iterations = a.max_iterations;
  opts.seed = a.seed;

  const fs::path out(a.out);
  std::string csv =
      "num_qubits,geometric_mean_fidelity,min_qubit_separation_mhz,"
      "min_interaction_separation_mhz,feasible\n";
  bool all_feasible = true;
  for (int n : a.sizes) {
    if (n < 2) throw UsageError("module sizes must be at least 2");
    const freq::Module module = freq::Module::complete(n);
    const auto res = freq::optimize_frequencies(module, params, opts, catalog);
    json report = freq::to_json(res);
    report["num_qubits"] = n;
    report["delta_q_hz"] = opts.delta_q;
    report["seed"] = a.seed;
    write_text(out / ("allocation_n" + std::to_string(n) + ".json"), report.dump(2) + "\n");
    if (res.report.feasible) {
      const hw::Topology topo{freq::fidelity_table(res.report, module, "alloc_n" + std::to_string(n)),
                              a.num_modules};
      write_text(out / "modules" / ("alloc_n" + std::to_string(n) + ".json"),
                 hw::to_json(topo).dump(2) + "\n");
    }
    char line[160];
    std::snprintf(line, sizeof line, "%d,%.6f,%.3f,%.3f,%d\n", n,
                  res.report.geometric_mean_fidelity, res.report.min_qubit_separation / freq::kMHz,
                  res.report.min_interaction_separation / freq::kMHz, res.report.feasible ? 1 : 0);
    csv += line;
    std::printf("N=%d F=%.4f min_sep=%.1f MHz %s\n", n, res.report.geometric_mean_fidelity,
                res.report.min_qubit_separation / freq::kMHz,
                res.report.feasible ? "feasible" : "INFEASIBLE");
    all_feasible = all_feasible && res.report.feasible;
  }
  write_text(out / "interaction_separations.csv", csv);
  return all_feasible ? kExitOk : kExitFailed;
}

// --------------------------------------------------------------- transpile

struct RouterArgs {
  std::string algorithm = "finesse";
  std::string post_selection = "native";
  std::string basis = "sqrt_iswap";
  int seeds = 24;
  std::uint64_t seed = 0;
  double beta = 1.0;
  int aggression = 2;
  int passes = 3;
  double W = 0.5;
  int extended_size = 20;
  bool decay = false;
  std::string topology = "4q4e";
  int num_modules = 4;
  std::string calibration;

  void add(Settings& s, CLI::App* app) {
    s.add(app, "algorithm", algorithm, "sabre, fasst, mirage or finesse");
    s.add(app, "post-selection", post_selection, "native or fidelity");
    s.add(app, "basis", basis, "cx, ecr, iswap, sqrt_iswap or riswap_<n>");
    s.add(app, "seeds", seeds, "Routing trials");
    s.add(app, "seed", seed, "Top-level seed");
    s.add(app, "beta", beta, "Fidelity blend weight");
    s.add(app, "aggression", aggression, "Mirror aggression 0-3");
    s.add(app, "passes", passes, "Odd number of routing passes");
    s.add(app, "W", W, "Extended-set weight");
    s.add(app, "extended-size", extended_size, "Extended-set size");
    s.flag(app, "decay", decay, "Enable the decay factor");
    s.add(app, "topology", topology, "Builtin module name or topology JSON");
    s.add(app, "num-modules", num_modules, "Modules chained for builtin topologies");
    s.add(app, "calibration", calibration, "Calibration snapshot JSON (overrides --topology)");
  }

  route::RouterConfig config() const {
    route::RouterConfig rc;
    apply_router_settings(rc, algorithm, post_selection, basis);
    rc.num_seeds = seeds;
    rc.seed = seed;
    rc.beta = beta;
    rc.aggression = aggression;
    rc.passes = passes;
    rc.W = W;
    rc.extended_size = extended_size;
    rc.decay_enabled = decay;
    rc.validate();
    return rc;
  }

  bench::NamedTopology target() const {
    if (calibration.empty()) return resolve_topology(topology, num_modules);
    std::vector<std::string> warnings;
    if (!fs::is_regular_file(calibration)) throw UsageError("no such file: " + calibration);
    auto map = hw::load_calibration(calibration, &warnings);
    for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return {fs::path(calibration).stem().string(), std::move(map)};
  }
};

struct TranspileArgs {
  std::string config;
  std::string input;
  std::string output;
  std::string out = "out";
  RouterArgs router;
};

int cmd_transpile(const TranspileArgs& a) {
  const std::string text = read_input(a.input);
  std::vector<std::string> warnings;
  const ir::CircuitDag dag = ir::parse_qasm(text, &warnings);
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const route::RouterConfig rc = a.router.config();
  const bench::NamedTopology topo = a.router.target();
  if (dag.num_qubits() > topo.map.num_physical())
    throw UsageError("circuit needs more qubits than the topology provides");

  const fs::path dest = a.output.empty()
                            ? fs::path(a.out) / (fs::path(a.input).stem().string() + ".routed.qasm")
                            : fs::path(a.output);
  json summary;
  if (route::is_conformant(dag, topo.map)) {
    write_text(dest, text);
    summary = {{"conformant", true}};
  } else {
    const route::RoutingResult r = route::transpile(dag, topo.map, rc);
    const std::map<std::string, std::string> meta = {
        {"initial-layout", ints_to_string(r.initial_layout.physical_to_logical())},
        {"output-permutation", ints_to_string(r.output_permutation.physical_to_logical)},
        {"algorithm", std::string(route::algorithm_name(rc.algorithm))},
        {"topology", topo.name}};
    write_text(dest, ir::serialize_qasm(r.circuit, meta));
    summary = {{"conformant", false},
               {"lf_cost", r.metrics.lf_cost},
               {"depth", r.metrics.depth},
               {"swaps", r.metrics.swap_count},
               {"mirrors", r.metrics.mirror_count},
               {"seed", r.metrics.seed}};
  }
  summary["output"] = dest.string();
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string config;
  std::string reference;
  std::string routed;
  std::string method = "auto";
  int states = 8;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a) {
  const ir::CircuitDag ref = ir::parse_qasm(read_input(a.reference));
  const std::string routed_text = read_input(a.routed);
  const ir::CircuitDag routed = ir::parse_qasm(routed_text);
  const auto meta = ir::read_qasm_metadata(routed_text);
  auto perm = [&](const std::string& key) {
    const auto it = meta.find(key);
    if (it == meta.end()) return ir::WirePermutation::identity(routed.num_qubits());
    ir::WirePermutation p{ints_from_string(it->second, key)};
    if (p.size() != routed.num_qubits() || !p.is_bijection())
      throw UsageError(key + " metadata is not a permutation of the routed wires");
    return p;
  };
  const ir::WirePermutation initial = perm("initial-layout");
  const ir::WirePermutation final = perm("output-permutation");

  const int n = ref.num_qubits();
  const bool clifford = verify::is_clifford_circuit(ref) && verify::is_clifford_circuit(routed);
  json verdict = {{"reference", a.reference}, {"routed", a.routed}, {"num_qubits", n}};
  bool ok = true;
  auto want = [&](const std::string& m) { return a.method == "auto" || a.method == m; };
  if (a.method != "auto" && a.method != "statevector" && a.method != "unitary" &&
      a.method != "clifford")
    throw UsageError("unknown method '" + a.method + "'");
  bool ran = false;
  if (want("statevector") && n <= verify::kMaxStatevectorWidth) {
    const bool v = verify::statevector_equivalent(ref, routed, initial, final, a.states, a.tol, a.seed);
    verdict["statevector"] = v;
    ok = ok && v;
    ran = true;
  }
  if (want("unitary") && n <= verify::kMaxUnitaryWidth) {
    const bool v = verify::unitary_equivalent(ref, routed, initial, final, a.tol);
    verdict["unitary"] = v;
    ok = ok && v;
    ran = true;
  }
  if (want("clifford") && (clifford || a.method == "clifford")) {
    const bool v = verify::clifford_equivalent(ref, routed, initial, final);
    verdict["clifford"] = v;
    ok = ok && v;
    ran = true;
  }
  if (!ran) throw UsageError("method '" + a.method + "' does not apply to this circuit");
  verdict["equivalent"] = ok;
  std::cout << verdict.dump(2) << "\n";
  return ok ? kExitOk : kExitFailed;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string config;
  std::string workloads = "workloads";
  std::vector<std::string> topologies = hw::builtin_module_names();
  std::vector<std::string> algorithms = {"sabre", "fasst", "mirage", "finesse"};
  std::vector<std::string> post_selections = {"native", "fidelity"};
  int threads = 0;
  int states = 8;
  double tol = 1e-8;
  std::string out = "out";
  bool write_runs = true;
  RouterArgs router;
};

int cmd_bench(const BenchArgs& a) {
  const auto workloads = bench::load_workloads(a.workloads);
  std::vector<bench::NamedTopology> topologies;
  for (const auto& t : a.topologies) topologies.push_back(resolve_topology(t, a.router.num_modules));
  bench::BenchConfig cfg;
  cfg.router = a.router.config();
  cfg.algorithms.clear();
  for (const auto& s : a.algorithms) cfg.algorithms.push_back(route::algorithm_from_name(s));
  cfg.post_selections.clear();
  for (const auto& s : a.post_selections)
    cfg.post_selections.push_back(route::post_selection_from_name(s));
  cfg.threads = a.threads;
  cfg.verify_states = a.states;
  cfg.verify_tol = a.tol;

  const auto result = bench::run_bench(workloads, topologies, cfg);
  const fs::path out(a.out);
  write_text(out / "bench.csv", bench::to_csv(result.rows));
  write_text(out / "bench_summary.csv", bench::summary_csv(result.summaries));
  if (a.write_runs)
    for (const auto& r : result.runs)
      write_text(out / "runs" /
                     (r.circuit + "__" + r.topology + "__" + r.algorithm + "__" +
                      r.post_selection + ".json"),
                 bench::to_json(r).dump(2) + "\n");
  for (const auto& s : result.summaries)
    std::printf("%-8s %-8s dlf=%+7.2f%% ddepth=%+7.2f%%\n", s.algorithm.c_str(),
                s.post_selection.c_str(), s.mean_pct_delta_lf, s.mean_pct_delta_depth);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfab: SNAIL fabric frequency allocation, routing and verification"};
  app.require_subcommand(1);

  AllocateArgs alloc;
  Settings alloc_s;
  auto* c_alloc = app.add_subcommand("allocate", "Optimize module frequencies");
  c_alloc->add_option("--config", alloc.config, "JSON config file");
  alloc_s.add(c_alloc, "sizes", alloc.sizes, "Module sizes to allocate");
  alloc_s.add(c_alloc, "delta-q-mhz", alloc.delta_q_mhz, "Minimum qubit separation");
  alloc_s.add(c_alloc, "drop-worst", alloc.drop_worst, "Gates excluded from the objective");
  alloc_s.add(c_alloc, "restarts", alloc.restarts, "Nelder-Mead restarts");
  alloc_s.add(c_alloc, "max-iterations", alloc.max_iterations, "Iterations per restart");
  alloc_s.add(c_alloc, "seed", alloc.seed, "Top-level seed");
  alloc_s.add(c_alloc, "num-modules", alloc.num_modules, "Modules chained in emitted fixtures");
  alloc_s.add(c_alloc, "q-lo-ghz", alloc.q_lo_ghz, "Qubit band lower edge");
  alloc_s.add(c_alloc, "q-hi-ghz", alloc.q_hi_ghz, "Qubit band upper edge");
  alloc_s.add(c_alloc, "s-lo-ghz", alloc.s_lo_ghz, "SNAIL band lower edge");
  alloc_s.add(c_alloc, "s-hi-ghz", alloc.s_hi_ghz, "SNAIL band upper edge");
  alloc_s.add(c_alloc, "constants", alloc.constants, "Physical constants JSON");
  alloc_s.add(c_alloc, "out", alloc.out, "Output directory");

  TranspileArgs tr;
  Settings tr_s;
  auto* c_tr = app.add_subcommand("transpile", "Route one circuit onto a fabric");
  c_tr->add_option("input", tr.input, "Input QASM")->required();
  c_tr->add_option("--config", tr.config, "JSON config file");
  c_tr->add_option("-o,--output", tr.output, "Output QASM (default <out>/<name>.routed.qasm)");
  tr_s.add(c_tr, "out", tr.out, "Output directory");
  tr.router.add(tr_s, c_tr);

  VerifyArgs ve;
  Settings ve_s;
  auto* c_ve = app.add_subcommand("verify", "Check a routed circuit against its reference");
  c_ve->add_option("reference", ve.reference, "Reference QASM")->required();
  c_ve->add_option("routed", ve.routed, "Routed QASM with qfab metadata")->required();
  c_ve->add_option("--config", ve.config, "JSON config file");
  ve_s.add(c_ve, "method", ve.method, "auto, statevector, unitary or clifford");
  ve_s.add(c_ve, "states", ve.states, "Haar-random states for the statevector check");
  ve_s.add(c_ve, "tol", ve.tol, "Tolerance");
  ve_s.add(c_ve, "seed", ve.seed, "State seed");

  BenchArgs be;
  Settings be_s;
  auto* c_be = app.add_subcommand("bench", "Route and verify a workload suite");
  c_be->add_option("--config", be.config, "JSON config file");
  be_s.add(c_be, "workloads", be.workloads, "Directory of .qasm files");
  be_s.add(c_be, "topologies", be.topologies, "Builtin module names or topology JSON files");
  be_s.add(c_be, "algorithms", be.algorithms, "Algorithms to compare");
  be_s.add(c_be, "post-selections", be.post_selections, "Post-selection modes");
  be_s.add(c_be, "threads", be.threads, "Worker threads (0 = all cores)");
  be_s.add(c_be, "states", be.states, "Haar-random states per check");
  be_s.add(c_be, "tol", be.tol, "Verification tolerance");
  be_s.add(c_be, "out", be.out, "Output directory");
  be.router.add(be_s, c_be);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_alloc->parsed()) {
      alloc_s.apply(config_section(alloc.config, "allocate"));
      return cmd_allocate(alloc);
    }
    if (c_tr->parsed()) {
      tr_s.apply(config_section(tr.config, "transpile"));
      return cmd_transpile(tr);
    }
    if (c_ve->parsed()) {
      ve_s.apply(config_section(ve.config, "verify"));
      return cmd_verify(ve);
    }
    be_s.apply(config_section(be.config, "bench"));
    return cmd_bench(be);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return kExitFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailed;
  }
}
