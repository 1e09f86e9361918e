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

#include "qfab/hw/coupling_map.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "qfab/common/error.hpp"

namespace qfab::hw {

CouplingMap::CouplingMap(int num_physical, std::vector<Edge> edges)
    : n_(num_physical), edges_(std::move(edges)) {
  if (n_ <= 0) throw ValidationError("coupling map needs at least one qubit");
  const auto n = static_cast<std::size_t>(n_);
  adj_.assign(n, {});
  index_.assign(n * n, -1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Edge& ed = edges_[e];
    if (ed.a > ed.b) std::swap(ed.a, ed.b);
    if (ed.a < 0 || ed.b >= n_)
      throw ValidationError("edge (" + std::to_string(ed.a) + "," + std::to_string(ed.b) +
                            ") outside " + std::to_string(n_) + " qubits");
    if (ed.a == ed.b) throw ValidationError("self-loop on qubit " + std::to_string(ed.a));
    if (!(ed.fidelity > 0.0 && ed.fidelity <= 1.0))
      throw ValidationError("edge fidelity must lie in (0, 1]");
    auto& slot = index_[static_cast<std::size_t>(ed.a) * n + static_cast<std::size_t>(ed.b)];
    if (slot >= 0)
      throw ValidationError("duplicate edge (" + std::to_string(ed.a) + "," +
                            std::to_string(ed.b) + ")");
    slot = static_cast<int>(e);
    index_[static_cast<std::size_t>(ed.b) * n + static_cast<std::size_t>(ed.a)] =
        static_cast<int>(e);
    adj_[static_cast<std::size_t>(ed.a)].push_back(ed.b);
    adj_[static_cast<std::size_t>(ed.b)].push_back(ed.a);
  }
  for (auto& v : adj_) std::sort(v.begin(), v.end());

  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj_[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++count;
        queue.push_back(v);
      }
  }
  if (count != n) throw ValidationError("coupling map is disconnected");
}

int CouplingMap::edge_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
  return index_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(b)];
}

double CouplingMap::fidelity(int a, int b) const {
  const int e = edge_index(a, b);
  if (e < 0)
    throw ValidationError("no coupling between " + std::to_string(a) + " and " +
                          std::to_string(b));
  return edges_[static_cast<std::size_t>(e)].fidelity;
}

double log_weight(double fidelity) { return -std::log(std::max(fidelity, 1e-10)); }

Eigen::VectorXd log_weights(const CouplingMap& map) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(map.edges().size()));
  for (std::size_t e = 0; e < map.edges().size(); ++e)
    w(static_cast<Eigen::Index>(e)) = log_weight(map.edges()[e].fidelity);
  return w;
}

Eigen::MatrixXi hop_distances(const CouplingMap& map) {
  const int n = map.num_physical();
  Eigen::MatrixXi d = Eigen::MatrixXi::Constant(n, n, -1);
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    d(s, s) = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : map.neighbors(u))
        if (d(s, v) < 0) {
          d(s, v) = d(s, u) + 1;
          queue.push_back(v);
        }
    }
  }
  return d;
}

namespace {

struct Label {
  double dist = std::numeric_limits<double>::infinity();
  int hops = 0;
  std::vector<int> path;
};

bool close(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool better(const Label& x, const Label& y) {
  if (!close(x.dist, y.dist)) return x.dist < y.dist;
  if (x.hops != y.hops) return x.hops < y.hops;
  return x.path < y.path;
}

// Single-source Dijkstra with deterministic tie-breaking; O(n^2), fine for
// the graph sizes used here.
std::vector<Label> dijkstra(const CouplingMap& map, const Eigen::VectorXd& w, int source) {
  const auto n = static_cast<std::size_t>(map.num_physical());
  std::vector<Label> lab(n);
  std::vector<bool> done(n, false);
  lab[static_cast<std::size_t>(source)] = {0.0, 0, {source}};
  for (std::size_t iter = 0; iter < n; ++iter) {
    int u = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && std::isfinite(lab[v].dist) &&
          (u < 0 || better(lab[v], lab[static_cast<std::size_t>(u)])))
        u = static_cast<int>(v);
    if (u < 0) break;
    done[static_cast<std::size_t>(u)] = true;
    const Label& lu = lab[static_cast<std::size_t>(u)];
    for (int v : map.neighbors(u)) {
      if (done[static_cast<std::size_t>(v)]) continue;
      Label cand;
      cand.dist = lu.dist + w(map.edge_index(u, v));
      cand.hops = lu.hops + 1;
      cand.path = lu.path;
      cand.path.push_back(v);
      if (better(cand, lab[static_cast<std::size_t>(v)]))
        lab[static_cast<std::size_t>(v)] = std::move(cand);
    }
  }
  return lab;
}

}  // namespace

Eigen::MatrixXd fidelity_distances(const CouplingMap& map, const Eigen::VectorXd& weights,
                                   int k_swap) {
  if (k_swap < 1) throw ValidationError("k_swap must be at least 1");
  if (weights.size() != static_cast<Eigen::Index>(map.edges().size()))
    throw ValidationError("one weight per edge required");
  const int n = map.num_physical();
  const Eigen::VectorXd w = static_cast<double>(k_swap) * weights;
  Eigen::MatrixXd d(n, n);
  for (int s = 0; s < n; ++s) {
    const auto lab = dijkstra(map, w, s);
    for (int t = 0; t < n; ++t) d(s, t) = lab[static_cast<std::size_t>(t)].dist;
  }
  // Enforce exact symmetry against rounding in the summation order.
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) d(t, s) = d(s, t);
  return d;
}

Eigen::MatrixXd blended_distances(const Eigen::MatrixXi& hop, const Eigen::MatrixXd& fid,
                                  double beta) {
  if (hop.rows() != fid.rows() || hop.cols() != fid.cols())
    throw ValidationError("distance matrices differ in shape");
  if (beta < 0) throw ValidationError("beta must be non-negative");
  if (beta == 0.0) return hop.cast<double>();
  return hop.cast<double>() + beta * fid;
}

std::vector<int> shortest_path(const CouplingMap& map, const Eigen::VectorXd& edge_weights,
                               int from, int to) {
  const auto lab = dijkstra(map, edge_weights, from);
  return lab.at(static_cast<std::size_t>(to)).path;
}

DistanceSet DistanceSet::compute(const CouplingMap& map, double beta, int k_swap) {
  DistanceSet d;
  d.beta = beta;
  d.k_swap = k_swap;
  d.hop = hop_distances(map);
  d.fid = fidelity_distances(map, log_weights(map), k_swap);
  d.blend = blended_distances(d.hop, d.fid, beta);
  return d;
}

}  // namespace qfab::hw
