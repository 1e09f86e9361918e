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

#include "qfab/hw/fabric.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "qfab/common/error.hpp"

namespace qfab::hw {

void ModuleSpec::validate() const {
  if (qubits_per_module < 2) throw ValidationError("module needs at least two qubits");
  if (edges.empty()) throw ValidationError("module has no edges");
  if (edges.size() != fidelities.size())
    throw ValidationError("module '" + name + "' has " + std::to_string(edges.size()) +
                          " edges but " + std::to_string(fidelities.size()) + " fidelities");
  for (double f : fidelities)
    if (!(f > 0.0 && f <= 1.0)) throw ValidationError("edge fidelity must lie in (0, 1]");
  if (link_exit < 0 || link_exit >= qubits_per_module || link_entry < 0 ||
      link_entry >= qubits_per_module)
    throw ValidationError("module link qubit out of range");
  // Connectivity, duplicates and ranges are checked by CouplingMap.
  std::vector<Edge> e;
  for (std::size_t i = 0; i < edges.size(); ++i)
    e.push_back({edges[i].first, edges[i].second, fidelities[i]});
  CouplingMap(qubits_per_module, std::move(e));
}

ModuleSpec make_module_spec(std::string name, int qubits, std::vector<std::pair<int, int>> edges,
                            std::vector<double> fidelities) {
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  std::sort(fidelities.begin(), fidelities.end(), std::greater<>());
  ModuleSpec s;
  s.name = std::move(name);
  s.qubits_per_module = qubits;
  s.edges = std::move(edges);
  s.fidelities = std::move(fidelities);
  s.link_exit = qubits / 2;
  s.link_entry = 0;
  s.validate();
  return s;
}

std::vector<std::string> builtin_module_names() { return {"4q4e", "4q5e", "4q6e", "5q7e"}; }

ModuleSpec builtin_module(std::string_view name) {
  if (name == "4q4e")
    return make_module_spec("4q4e", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
                            {0.996, 0.995, 0.995, 0.994});
  if (name == "4q5e")
    return make_module_spec("4q5e", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}},
                            {0.994, 0.993, 0.987, 0.986, 0.985});
  if (name == "4q6e")
    return make_module_spec("4q6e", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                            {0.994, 0.993, 0.991, 0.988, 0.977, 0.975});
  if (name == "5q7e")
    return make_module_spec("5q7e", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}, {0, 3}},
                            {0.989, 0.980, 0.973, 0.968, 0.968, 0.962, 0.960});
  throw ValidationError("unknown module '" + std::string(name) + "'");
}

CouplingMap build_snail_fabric(const ModuleSpec& spec, int num_modules) {
  spec.validate();
  if (num_modules < 1) throw ValidationError("num_modules must be at least 1");
  const int q = spec.qubits_per_module;
  const double link_fidelity = *std::min_element(spec.fidelities.begin(), spec.fidelities.end());
  std::vector<Edge> edges;
  for (int m = 0; m < num_modules; ++m) {
    for (std::size_t i = 0; i < spec.edges.size(); ++i)
      edges.push_back({m * q + spec.edges[i].first, m * q + spec.edges[i].second,
                       spec.fidelities[i]});
    if (m + 1 < num_modules)
      edges.push_back({m * q + spec.link_exit, (m + 1) * q + spec.link_entry, link_fidelity});
  }
  return CouplingMap(q * num_modules, std::move(edges));
}

namespace {

void check_version(const nlohmann::json& j) {
  if (!j.contains("format_version")) throw ValidationError("missing format_version");
  const int v = j.at("format_version").get<int>();
  if (v != kFormatVersion)
    throw ValidationError("unsupported format_version " + std::to_string(v));
}

}  // namespace

nlohmann::json to_json(const Topology& topo) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : topo.spec.edges) edges.push_back({a, b});
  return {
      {"format_version", kFormatVersion},
      {"name", topo.spec.name},
      {"num_modules", topo.num_modules},
      {"module",
       {{"qubits_per_module", topo.spec.qubits_per_module},
        {"edges", edges},
        {"fidelities", topo.spec.fidelities},
        {"link", {{"exit", topo.spec.link_exit}, {"entry", topo.spec.link_entry}}}}},
  };
}

Topology topology_from_json(const nlohmann::json& j) {
  try {
    check_version(j);
    Topology t;
    const auto& m = j.at("module");
    t.spec.name = j.value("name", std::string("topology"));
    t.spec.qubits_per_module = m.at("qubits_per_module").get<int>();
    for (const auto& e : m.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be [i, j]");
      t.spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    t.spec.fidelities = m.at("fidelities").get<std::vector<double>>();
    if (m.contains("link")) {
      t.spec.link_exit = m.at("link").at("exit").get<int>();
      t.spec.link_entry = m.at("link").at("entry").get<int>();
    } else {
      t.spec.link_exit = t.spec.qubits_per_module / 2;
      t.spec.link_entry = 0;
    }
    t.num_modules = j.value("num_modules", 1);
    t.spec.validate();
    if (t.num_modules < 1) throw ValidationError("num_modules must be at least 1");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed topology: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Topology load_topology(const std::filesystem::path& path) {
  try {
    return topology_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

CouplingMap calibration_from_json(const nlohmann::json& j, std::vector<std::string>* warnings) {
  try {
    check_version(j);
    const int n = j.at("num_qubits").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      const int a = e.at("i").get<int>(), b = e.at("j").get<int>();
      if (!e.contains("error") || e.at("error").is_null()) {
        if (warnings)
          warnings->push_back("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") has no calibration; dropped");
        continue;
      }
      const double err = e.at("error").get<double>();
      if (!(err >= 0.0 && err < 1.0))
        throw ValidationError("edge error rate must lie in [0, 1)");
      edges.push_back({a, b, 1.0 - err});
    }
    return CouplingMap(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed calibration: ") + e.what());
  }
}

CouplingMap load_calibration(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  try {
    return calibration_from_json(nlohmann::json::parse(read_file(path)), warnings);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace qfab::hw
