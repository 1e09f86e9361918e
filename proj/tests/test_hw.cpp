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
#include <limits>

#include "oracles.hpp"
#include "qfab/common/error.hpp"
#include "qfab/hw/coupling_map.hpp"
#include "qfab/hw/fabric.hpp"

using namespace qfab;
using namespace qfab::hw;

namespace {

/// Random connected graph: a random spanning tree plus extra edges.
CouplingMap random_graph(Rng& rng, int n) {
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> has(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n), false));
  auto add = [&](int a, int b) {
    if (a == b || has[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return;
    has[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    has[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
    edges.push_back({a, b, rng.uniform(0.9, 1.0)});
  };
  for (int v = 1; v < n; ++v) add(v, static_cast<int>(rng.below(static_cast<std::uint64_t>(v))));
  const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  for (int e = 0; e < extra; ++e)
    add(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
        static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  return CouplingMap(n, edges);
}

}  // namespace

TEST_CASE("coupling map validation") {
  CHECK_THROWS_AS(CouplingMap(0, {}), ValidationError);
  CHECK_THROWS_AS(CouplingMap(2, {{0, 0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(CouplingMap(2, {{0, 2, 1.0}}), ValidationError);
  CHECK_THROWS_AS(CouplingMap(2, {{0, 1, 1.0}, {1, 0, 0.9}}), ValidationError);
  CHECK_THROWS_AS(CouplingMap(2, {{0, 1, 0.0}}), ValidationError);
  CHECK_THROWS_AS(CouplingMap(3, {{0, 1, 0.9}}), ValidationError);
  const CouplingMap m(3, {{1, 0, 0.9}, {1, 2, 0.8}});
  CHECK(m.edges()[0].a == 0);
  CHECK(m.has_edge(2, 1));
  CHECK_FALSE(m.has_edge(0, 2));
  CHECK(m.fidelity(1, 2) == 0.8);
  CHECK_THROWS_AS(m.fidelity(0, 2), ValidationError);
}

TEST_CASE("log weight clamps tiny fidelities") {
  CHECK(log_weight(1.0) == 0.0);
  CHECK(log_weight(std::exp(-2.0)) == doctest::Approx(2.0));
  CHECK(log_weight(1e-20) == doctest::Approx(-std::log(1e-10)));
}

TEST_CASE("line graph distances") {
  const CouplingMap m(4, {{0, 1, 0.99}, {1, 2, 0.98}, {2, 3, 0.97}});
  const auto hop = hop_distances(m);
  CHECK(hop(0, 3) == 3);
  CHECK(hop(2, 0) == 2);
  const auto fid = fidelity_distances(m, log_weights(m), 3);
  CHECK(fid(0, 3) == doctest::Approx(-3 * (std::log(0.99) + std::log(0.98) + std::log(0.97))));
  CHECK_THROWS_AS(fidelity_distances(m, log_weights(m), 0), ValidationError);
}

TEST_CASE("fidelity distances equal exhaustive path minima on random graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const CouplingMap m = random_graph(rng, n);
    const int k_swap = 1 + static_cast<int>(rng.below(3));
    const auto d = fidelity_distances(m, log_weights(m), k_swap);
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n),
                                                           std::numeric_limits<double>::infinity()));
    for (const auto& e : m.edges())
      w[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] =
          w[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] =
              -k_swap * std::log(e.fidelity);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        CAPTURE(trial);
        CAPTURE(s);
        CAPTURE(t);
        CHECK(d(s, t) == doctest::Approx(oracle::brute_force_distance(n, w, s, t)).epsilon(1e-12));
        CHECK(d(s, t) == d(t, s));
      }
  }
}

TEST_CASE("blend and its beta = 0 limit") {
  const CouplingMap m(3, {{0, 1, 0.9}, {1, 2, 0.9}});
  const DistanceSet d = DistanceSet::compute(m, 0.0, 3);
  CHECK(d.blend == d.hop.cast<double>());
  const DistanceSet d2 = DistanceSet::compute(m, 2.0, 3);
  CHECK(d2.blend(0, 2) == doctest::Approx(2 + 2.0 * d2.fid(0, 2)));
  CHECK_THROWS_AS(blended_distances(d.hop, d.fid, -1.0), ValidationError);
}

TEST_CASE("shortest path prefers fewer hops, then the smaller sequence") {
  // Square 0-1-2-3-0 with equal weights: two 2-hop routes from 0 to 2.
  const CouplingMap sq(4, {{0, 1, 0.9}, {1, 2, 0.9}, {2, 3, 0.9}, {0, 3, 0.9}});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
  CHECK(shortest_path(sq, ones, 0, 2) == std::vector<int>{0, 1, 2});
  CHECK(shortest_path(sq, ones, 2, 0) == std::vector<int>{2, 1, 0});
  // A direct heavy edge ties with a two-hop route: fewer hops win.
  const CouplingMap tri(3, {{0, 1, 0.9}, {1, 2, 0.9}, {0, 2, 0.9}});
  Eigen::VectorXd w(3);
  w << 1.0, 1.0, 2.0;
  CHECK(shortest_path(tri, w, 0, 2) == std::vector<int>{0, 2});
  w(2) = 2.5;
  CHECK(shortest_path(tri, w, 0, 2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("builtin modules chain into fabrics") {
  for (const auto& name : builtin_module_names()) {
    const ModuleSpec spec = builtin_module(name);
    const CouplingMap m = build_snail_fabric(spec, 4);
    CHECK(m.num_physical() == 4 * spec.qubits_per_module);
    CHECK(m.edges().size() == 4 * spec.edges.size() + 3);
    const double worst = *std::min_element(spec.fidelities.begin(), spec.fidelities.end());
    const int q = spec.qubits_per_module;
    CHECK(m.fidelity(spec.link_exit, q + spec.link_entry) == worst);
    CHECK(std::is_sorted(spec.fidelities.rbegin(), spec.fidelities.rend()));
  }
  CHECK_THROWS_AS(builtin_module("7q9e"), ValidationError);
  CHECK_THROWS_AS(build_snail_fabric(builtin_module("4q4e"), 0), ValidationError);
}

TEST_CASE("topology JSON round trip") {
  const Topology t{builtin_module("5q7e"), 3};
  const Topology u = topology_from_json(to_json(t));
  CHECK(u.spec.edges == t.spec.edges);
  CHECK(u.spec.fidelities == t.spec.fidelities);
  CHECK(u.num_modules == 3);
  CHECK(u.spec.link_exit == 2);
  auto bad = to_json(t);
  bad["format_version"] = 99;
  CHECK_THROWS_AS(topology_from_json(bad), ValidationError);
  bad = to_json(t);
  bad["module"]["fidelities"].erase(0);
  CHECK_THROWS_AS(topology_from_json(bad), ValidationError);
}

TEST_CASE("calibration snapshots drop uncalibrated edges with a warning") {
  const nlohmann::json j = {
      {"format_version", 1},
      {"num_qubits", 3},
      {"edges",
       {{{"i", 0}, {"j", 1}, {"error", 0.01}},
        {{"i", 1}, {"j", 2}, {"error", 0.02}},
        {{"i", 0}, {"j", 2}, {"error", nullptr}}}}};
  std::vector<std::string> warnings;
  const CouplingMap m = calibration_from_json(j, &warnings);
  CHECK(m.edges().size() == 2);
  CHECK(warnings.size() == 1);
  CHECK(m.fidelity(1, 2) == doctest::Approx(0.98));
}
