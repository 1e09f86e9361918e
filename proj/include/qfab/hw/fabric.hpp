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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfab/hw/coupling_map.hpp"

namespace qfab::hw {

inline constexpr int kFormatVersion = 1;

/// One coupler module and the rule for chaining copies of it.
///
/// `edges[i]` carries `fidelities[i]`. Module m's qubit `link_exit` couples
/// to module m+1's qubit `link_entry`; that link gets the worst intra-module
/// fidelity.
struct ModuleSpec {
  std::string name;
  int qubits_per_module = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> fidelities;
  int link_exit = 0;
  int link_entry = 0;

  void validate() const;
};

/// Sort `edges` lexicographically and hand out `fidelities` in descending
/// order, so the best fidelity lands on the first edge.
ModuleSpec make_module_spec(std::string name, int qubits, std::vector<std::pair<int, int>> edges,
                            std::vector<double> fidelities);

/// Built-in module fixtures: "4q4e", "4q5e", "4q6e", "5q7e".
std::vector<std::string> builtin_module_names();
ModuleSpec builtin_module(std::string_view name);

CouplingMap build_snail_fabric(const ModuleSpec& spec, int num_modules);

struct Topology {
  ModuleSpec spec;
  int num_modules = 1;

  CouplingMap build() const { return build_snail_fabric(spec, num_modules); }
};

nlohmann::json to_json(const Topology& topo);
Topology topology_from_json(const nlohmann::json& j);
Topology load_topology(const std::filesystem::path& path);

/// Calibration snapshot `{format_version, num_qubits, edges: [{i, j, error}]}`.
/// C = 1 - error. Entries without an error are dropped with a warning.
CouplingMap calibration_from_json(const nlohmann::json& j, std::vector<std::string>* warnings);
CouplingMap load_calibration(const std::filesystem::path& path, std::vector<std::string>* warnings);

/// Read a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace qfab::hw
