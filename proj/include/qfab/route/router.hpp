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

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfab/common/rng.hpp"
#include "qfab/hw/coupling_map.hpp"
#include "qfab/ir/dag.hpp"
#include "qfab/weyl/weyl.hpp"

namespace qfab::route {

enum class Algorithm { Sabre, Fasst, Mirage, Finesse };
enum class PostSelection { Native, Fidelity };

std::string_view algorithm_name(Algorithm a);
Algorithm algorithm_from_name(std::string_view name);
std::string_view post_selection_name(PostSelection p);
PostSelection post_selection_from_name(std::string_view name);

/// Scores against the blended distance (otherwise hop count).
bool uses_fidelity_routing(Algorithm a);
/// Considers mirror substitution of routable gates.
bool uses_mirrors(Algorithm a);

struct RouterConfig {
  Algorithm algorithm = Algorithm::Sabre;
  double W = 0.5;
  int extended_size = 20;
  double beta = 1.0;
  int aggression = 2;
  bool decay_enabled = false;
  double decay_increment = 0.001;
  int decay_reset = 5;
  int release_valve_threshold = 10;
  int num_seeds = 24;
  int passes = 3;
  PostSelection post_selection = PostSelection::Native;
  weyl::BasisGate basis = weyl::BasisGate::sqrt_iswap();
  std::uint64_t seed = 0;

  void validate() const;
};

/// Mutable state of one routing pass.
struct RoutingState {
  const ir::CircuitDag* dag = nullptr;
  const hw::CouplingMap* map = nullptr;
  /// Distance matrix the score uses (hop or blended).
  const Eigen::MatrixXd* distance = nullptr;
  ir::Layout layout;
  /// Ready two-qubit gates that are not yet executed.
  std::vector<int> front;
  std::vector<int> extended;
  std::vector<double> decay;
  int stalled = 0;

  /// Physical distance of a two-qubit gate under the current layout.
  double gate_distance(int gate_id) const;
  double gate_distance(int gate_id, const ir::Layout& layout) const;
};

/// sum_{F} D[pi(g)] + W/|E| sum_{E} D[pi(g)], evaluated under `layout`.
double heuristic_score(const RoutingState& state, const RouterConfig& config,
                       const ir::Layout& layout);
double heuristic_score(const RoutingState& state, const RouterConfig& config);

/// Candidate swaps: coupling edges touching a physical qubit of a front
/// gate, as (a, b) with a < b in ascending order.
std::vector<std::pair<int, int>> candidate_swaps(const RoutingState& state);

/// Best candidate by relative scoring; ties broken by `rng`.
std::pair<int, int> select_swap(const RoutingState& state, const RouterConfig& config, Rng& rng);

/// Swaps that make the closest front gate executable, walking its shortest
/// path inwards from both ends.
std::vector<std::pair<int, int>> release_valve(const RoutingState& state,
                                               const RouterConfig& config,
                                               const Eigen::VectorXd& path_weights);

/// True when the valve should fire before the next swap.
inline bool release_valve_due(int stalled, int threshold) { return stalled >= threshold; }

/// Whether routable gate `gate_id` should be executed as its mirror.
bool mirror_decision(int gate_id, const RoutingState& state, const RouterConfig& config,
                     const weyl::GateCounter& counter);

struct SwapRecord {
  int a = 0;
  int b = 0;
  bool forced = false;
  bool operator==(const SwapRecord&) const = default;
};

struct PassResult {
  std::vector<ir::Gate> gates;  // physical wires
  ir::Layout initial_layout;
  ir::Layout final_layout;
  int swap_count = 0;
  int mirror_count = 0;
  std::vector<SwapRecord> swap_trace;
};

/// Everything a pass needs that is shared across seeds.
struct RoutingContext {
  const hw::CouplingMap* map = nullptr;
  Eigen::MatrixXd distance;
  Eigen::VectorXd path_weights;
  Eigen::VectorXd log_weights;

  RoutingContext(const hw::CouplingMap& map, const hw::DistanceSet& dist,
                 const RouterConfig& config);
};

/// One SABRE sweep over `dag` from `initial` (logical -> physical over all
/// physical qubits). Mirrors are considered only when `allow_mirrors`.
PassResult route_pass(const ir::CircuitDag& dag, const RoutingContext& ctx,
                      const RouterConfig& config, const weyl::GateCounter& counter,
                      const ir::Layout& initial, Rng& rng, bool allow_mirrors);

}  // namespace qfab::route
