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

#include <vector>

#include "qfab/hw/coupling_map.hpp"
#include "qfab/ir/dag.hpp"
#include "qfab/route/router.hpp"
#include "qfab/weyl/weyl.hpp"

namespace qfab::route {

struct RoutingMetrics {
  double lf_cost = 0.0;
  int depth = 0;
  int swap_count = 0;
  int mirror_count = 0;
  int seed = 0;
};

struct RoutingResult {
  /// Hardware-conformant circuit over all physical qubits.
  ir::CircuitDag circuit;
  ir::Layout initial_layout;
  ir::Layout final_layout;
  /// Physical output wire -> logical qubit.
  ir::WirePermutation output_permutation;
  RoutingMetrics metrics;
  std::vector<SwapRecord> swap_trace;
};

/// Sum over two-qubit gates of L(edge) * k(gate). Throws ValidationError
/// for a gate off the coupling map.
double lf_cost(const ir::CircuitDag& circuit, const hw::CouplingMap& map,
               const weyl::GateCounter& counter);

/// True when every two-qubit gate already sits on an edge under the
/// identity layout.
bool is_conformant(const ir::CircuitDag& dag, const hw::CouplingMap& map);

/// One full trial: random initial layout, then alternating forward and
/// reverse passes; the last (forward) pass is the result.
RoutingResult run_trial(const ir::CircuitDag& dag, const RoutingContext& ctx,
                        const RouterConfig& config, const weyl::GateCounter& counter, int trial);

/// Every seed's result, in seed order.
std::vector<RoutingResult> run_trials(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                                      const RouterConfig& config,
                                      const weyl::GateCounter& counter);

/// Index of the trial chosen by the post-selection rule; ties to the lower
/// index.
std::size_t select_trial(const std::vector<RoutingResult>& trials, Algorithm algorithm,
                         PostSelection post_selection);

/// Route and post-select. Conformant inputs are returned unchanged.
RoutingResult transpile(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                        const RouterConfig& config);
RoutingResult transpile(const ir::CircuitDag& dag, const hw::CouplingMap& map,
                        const RouterConfig& config, const weyl::GateCounter& counter);

}  // namespace qfab::route
