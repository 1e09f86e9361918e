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

#include "qfab/route/transpile.hpp"

#include <numeric>

#include "qfab/common/error.hpp"
#include "qfab/common/rng.hpp"

namespace qfab::route {

double lf_cost(const ir::CircuitDag& circuit, const hw::CouplingMap& map,
               const weyl::GateCounter& counter) {
  double total = 0.0;
  for (const ir::Gate& g : circuit.gates()) {
    if (!g.is_two_qubit()) continue;
    const int a = g.wires[0], b = g.wires[1];
    if (a >= map.num_physical() || b >= map.num_physical() || !map.has_edge(a, b))
      throw ValidationError("gate '" + g.qasm_name() + "' on (" + std::to_string(a) + ", " +
                            std::to_string(b) + ") is not on a coupling edge");
    total += hw::log_weight(map.fidelity(a, b)) * counter.count(g);
  }
  return total;
}

bool is_conformant(const ir::CircuitDag& dag, const hw::CouplingMap& map) {
  if (dag.num_qubits() > map.num_physical()) return false;
  for (const ir::Gate& g : dag.gates())
    if (g.is_two_qubit() && !map.has_edge(g.wires[0], g.wires[1])) return false;
  return true;
}

namespace {

RoutingResult finish(std::vector<ir::Gate> gates, int num_phys, const ir::Layout& initial,
                     const ir::Layout& final_layout, int swaps, int mirrors,
                     std::vector<SwapRecord> trace, int seed, const hw::CouplingMap& map,
                     const weyl::GateCounter& counter) {
  RoutingResult r;
  r.circuit = ir::CircuitDag(num_phys, std::move(gates));
  r.initial_layout = initial;
  r.final_layout = final_layout;
  r.output_permutation = final_layout.as_permutation();
  r.metrics.lf_cost = lf_cost(r.circuit, map, counter);
  r.metrics.depth = ir::circuit_depth(r.circuit);
  r.metrics.swap_count = swaps;
  r.metrics.mirror_count = mirrors;
  r.metrics.seed = seed;
  r.swap_trace = std::move(trace);
  return r;
}

}  // namespace

RoutingResult run_trial(const ir::CircuitDag& dag, const RoutingContext& ctx,
                        const RouterConfig& config, const weyl::GateCounter& counter, int trial) {
  const int n = ctx.map->num_physical();
  std::vector<int> l2p(static_cast<std::size_t>(n));
  std::iota(l2p.begin(), l2p.end(), 0);
  Rng shuffle = Rng::stream(config.seed, static_cast<std::uint64_t>(trial), 0);
  shuffle.shuffle(l2p);
  ir::Layout layout(std::move(l2p));

  const ir::CircuitDag rev = dag.reversed();
  PassResult last;
  for (int pass = 0; pass < config.passes; ++pass) {
    const bool forward = pass % 2 == 0;
    Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(trial),
                          static_cast<std::uint64_t>(pass + 1));
    last = route_pass(forward ? dag : rev, ctx, config, counter, layout, rng, forward);
    layout = last.final_layout;
  }
  return finish(std::move(last.gates), n, last.initial_layout, last.final_layout,
                last.swap_count, last.mirror_count, std::move(last.swap_trace), trial, *ctx.map,
                counter);
}

std::vector<RoutingResult> run_trials(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                                      const RouterConfig& config,
                                      const weyl::GateCounter& counter) {
  config.validate();
  if (dag.num_qubits() > map.num_physical())
    throw ValidationError("circuit has " + std::to_string(dag.num_qubits()) +
                          " qubits but the device only " + std::to_string(map.num_physical()));
  const auto dist = hw::DistanceSet::compute(map, config.beta, counter.swap_count());
  const RoutingContext ctx(map, dist, config);
  std::vector<RoutingResult> out;
  out.reserve(static_cast<std::size_t>(config.num_seeds));
  for (int t = 0; t < config.num_seeds; ++t) out.push_back(run_trial(dag, ctx, config, counter, t));
  return out;
}

std::size_t select_trial(const std::vector<RoutingResult>& trials, Algorithm algorithm,
                         PostSelection post_selection) {
  if (trials.empty()) throw ValidationError("no trials to select from");
  auto key = [&](const RoutingResult& r) -> double {
    if (post_selection == PostSelection::Fidelity) return r.metrics.lf_cost;
    switch (algorithm) {
      case Algorithm::Sabre: return r.metrics.swap_count;
      case Algorithm::Mirage: return r.metrics.depth;
      default: return r.metrics.lf_cost;
    }
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < trials.size(); ++i)
    if (key(trials[i]) < key(trials[best])) best = i;
  return best;
}

RoutingResult transpile(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                        const RouterConfig& config, const weyl::GateCounter& counter) {
  config.validate();
  if (is_conformant(dag, map)) {
    const ir::Layout id = ir::Layout::identity(map.num_physical());
    return finish(dag.gates(), map.num_physical(), id, id, 0, 0, {}, 0, map, counter);
  }
  auto trials = run_trials(dag, map, config, counter);
  return std::move(trials[select_trial(trials, config.algorithm, config.post_selection)]);
}

RoutingResult transpile(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                        const RouterConfig& config) {
  const weyl::GateCounter counter(config.basis);
  return transpile(dag, map, config, counter);
}

}  // namespace qfab::route
