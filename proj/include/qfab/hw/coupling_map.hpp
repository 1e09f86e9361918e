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

#include <vector>

namespace qfab::hw {

/// Undirected coupling with two-qubit gate fidelity `fidelity` in (0, 1].
struct Edge {
  int a = 0;
  int b = 0;
  double fidelity = 1.0;
};

/// Physical qubit graph with per-edge fidelities.
///
/// Edges are stored with a < b in the order given. The graph must be
/// connected, free of self-loops and duplicate edges.
class CouplingMap {
 public:
  CouplingMap() = default;
  CouplingMap(int num_physical, std::vector<Edge> edges);

  int num_physical() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Index into `edges()` or -1.
  int edge_index(int a, int b) const;
  bool has_edge(int a, int b) const { return edge_index(a, b) >= 0; }
  double fidelity(int a, int b) const;

  /// Sorted neighbours of physical qubit p.
  const std::vector<int>& neighbors(int p) const {
    return adj_.at(static_cast<std::size_t>(p));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> index_;  // n*n, -1 when absent
};

/// L = -ln(max(C, 1e-10)).
double log_weight(double fidelity);

/// Per-edge L, in `edges()` order.
Eigen::VectorXd log_weights(const CouplingMap& map);

/// All-pairs BFS hop counts.
Eigen::MatrixXi hop_distances(const CouplingMap& map);

/// All-pairs Dijkstra with edge weight k_swap * weights[e].
Eigen::MatrixXd fidelity_distances(const CouplingMap& map, const Eigen::VectorXd& weights,
                                   int k_swap);

/// hop + beta * fid, elementwise.
Eigen::MatrixXd blended_distances(const Eigen::MatrixXi& hop, const Eigen::MatrixXd& fid,
                                  double beta);

/// Minimum-weight path from `from` to `to` (inclusive). Ties go to fewer
/// hops, then to the lexicographically smaller node sequence.
std::vector<int> shortest_path(const CouplingMap& map, const Eigen::VectorXd& edge_weights,
                               int from, int to);

/// Distance matrices the routers score against.
struct DistanceSet {
  Eigen::MatrixXi hop;
  Eigen::MatrixXd fid;
  Eigen::MatrixXd blend;
  double beta = 1.0;
  int k_swap = 3;

  static DistanceSet compute(const CouplingMap& map, double beta, int k_swap);
};

}  // namespace qfab::hw
