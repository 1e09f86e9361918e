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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfab/freq/calibration.hpp"
#include "qfab/freq/catalog.hpp"
#include "qfab/hw/fabric.hpp"

namespace qfab::freq {

/// Qubits and the gates driven through one coupler.
struct Module {
  int num_qubits = 0;
  std::vector<std::pair<int, int>> gates;

  /// Every pair driven (complete graph).
  static Module complete(int n);
  void validate() const;
};

struct FrequencyBounds {
  double q_lo = 3.3e9;
  double q_hi = 5.7e9;
  double s_lo = 4.2e9;
  double s_hi = 4.7e9;

  void validate() const;
};

struct GateInfidelity {
  int a = 0;
  int b = 0;
  double pump = 0.0;
  double eps_coh = 0.0;
  double eps_inc = 0.0;
  double eps_gate = 0.0;
};

struct GateInfidelityReport {
  std::vector<GateInfidelity> gates;
  /// Geometric mean of 1 - eps_gate over the kept gates.
  double geometric_mean_fidelity = 1.0;
  double min_qubit_separation = 0.0;
  double min_interaction_separation = 0.0;
  /// Gates excluded as the worst k, by index into `gates`.
  std::vector<int> dropped;
  bool feasible = true;
};

/// Per-gate infidelities: coherent spectator sum at the pump detuning plus
/// the pump-limit loss of the gate's lower-frequency qubit.
std::vector<GateInfidelity> gate_infidelities(const FrequencyAssignment& assign,
                                              const Module& module,
                                              const CostModelParams& params,
                                              const std::vector<SpectatorTerm>& catalog);

/// Allocation loss: gate infidelities with the worst k dropped, plus
/// 1e3 (violation / delta_q)^2 for each qubit pair closer than delta_q.
double allocation_cost(const FrequencyAssignment& assign, const Module& module,
                       const CostModelParams& params, int k, double delta_q,
                       const std::vector<SpectatorTerm>& catalog = spectator_catalog());

struct AllocationOptions {
  FrequencyBounds bounds;
  double delta_q = 200e6;
  int k = 0;
  int restarts = 16;
  int max_iterations = 10000;
  double f_tolerance = 1e-12;
  std::uint64_t seed = 0;
};

struct AllocationResult {
  FrequencyAssignment assignment;
  GateInfidelityReport report;
  double cost = 0.0;
};

GateInfidelityReport make_report(const FrequencyAssignment& assign, const Module& module,
                                 const CostModelParams& params, int k, double delta_q,
                                 const std::vector<SpectatorTerm>& catalog = spectator_catalog());

/// Seeded Nelder-Mead restarts inside the box; trial points are clamped.
AllocationResult optimize_frequencies(const Module& module, const CostModelParams& params,
                                      const AllocationOptions& opts,
                                      const std::vector<SpectatorTerm>& catalog =
                                          spectator_catalog());

/// Edge fidelities C = 1 - eps_gate as a module fixture; dropped gates are
/// left out.
hw::ModuleSpec fidelity_table(const GateInfidelityReport& report, const Module& module,
                              std::string name);

nlohmann::json to_json(const AllocationResult& r);

}  // namespace qfab::freq
