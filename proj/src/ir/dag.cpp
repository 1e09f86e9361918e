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

#include "qfab/ir/dag.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "qfab/common/error.hpp"

namespace qfab::ir {

CircuitDag::CircuitDag(int num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits), gates_(std::move(gates)) {
  if (num_qubits_ < 0) throw ValidationError("negative qubit count");
  const std::size_t n = gates_.size();
  succ_.assign(n, {});
  pred_.assign(n, {});
  std::vector<int> last(static_cast<std::size_t>(num_qubits_), -1);
  for (std::size_t i = 0; i < n; ++i) {
    Gate& g = gates_[i];
    g.id = static_cast<int>(i);
    g.validate();
    for (int w : g.wires) {
      if (w >= num_qubits_)
        throw ValidationError("gate '" + g.qasm_name() + "' uses wire " +
                              std::to_string(w) + " outside a " +
                              std::to_string(num_qubits_) + "-qubit circuit");
      const int prev = last[static_cast<std::size_t>(w)];
      if (prev >= 0) {
        auto& ps = pred_[i];
        if (std::find(ps.begin(), ps.end(), prev) == ps.end()) {
          ps.push_back(prev);
          succ_[static_cast<std::size_t>(prev)].push_back(g.id);
        }
      }
      last[static_cast<std::size_t>(w)] = g.id;
    }
  }
  for (auto& s : succ_) std::sort(s.begin(), s.end());
  for (auto& p : pred_) std::sort(p.begin(), p.end());
}

std::vector<std::pair<int, int>> CircuitDag::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < succ_.size(); ++i)
    for (int s : succ_[i]) out.emplace_back(static_cast<int>(i), s);
  return out;
}

std::size_t CircuitDag::two_qubit_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

CircuitDag CircuitDag::reversed() const {
  std::vector<Gate> rev(gates_.rbegin(), gates_.rend());
  return CircuitDag(num_qubits_, std::move(rev));
}

WirePermutation WirePermutation::identity(int n) {
  WirePermutation p;
  p.physical_to_logical.resize(static_cast<std::size_t>(n));
  std::iota(p.physical_to_logical.begin(), p.physical_to_logical.end(), 0);
  return p;
}

bool WirePermutation::is_bijection() const {
  std::vector<bool> seen(physical_to_logical.size(), false);
  for (int l : physical_to_logical) {
    if (l < 0 || l >= size() || seen[static_cast<std::size_t>(l)]) return false;
    seen[static_cast<std::size_t>(l)] = true;
  }
  return true;
}

Layout::Layout(std::vector<int> logical_to_physical) : l2p_(std::move(logical_to_physical)) {
  p2l_.assign(l2p_.size(), -1);
  for (std::size_t l = 0; l < l2p_.size(); ++l) {
    const int p = l2p_[l];
    if (p < 0 || p >= size() || p2l_[static_cast<std::size_t>(p)] != -1)
      throw ValidationError("layout is not a bijection");
    p2l_[static_cast<std::size_t>(p)] = static_cast<int>(l);
  }
}

Layout Layout::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Layout(std::move(v));
}

void Layout::swap_physical(int p, int q) {
  auto& lp = p2l_.at(static_cast<std::size_t>(p));
  auto& lq = p2l_.at(static_cast<std::size_t>(q));
  std::swap(lp, lq);
  l2p_[static_cast<std::size_t>(lp)] = p;
  l2p_[static_cast<std::size_t>(lq)] = q;
}

std::vector<int> front_layer(const CircuitDag& dag, const std::vector<bool>& executed) {
  std::vector<int> out;
  for (const Gate& g : dag.gates()) {
    if (executed[static_cast<std::size_t>(g.id)] || g.is_barrier()) continue;
    const auto preds = dag.predecessors(g.id);
    if (std::all_of(preds.begin(), preds.end(),
                    [&](int p) { return executed[static_cast<std::size_t>(p)]; }))
      out.push_back(g.id);
  }
  return out;
}

std::vector<int> extended_set(const CircuitDag& dag, std::span<const int> front, int size) {
  std::vector<int> out;
  if (size <= 0) return out;
  std::unordered_set<int> seen(front.begin(), front.end());
  std::vector<int> level(front.begin(), front.end());
  while (!level.empty() && static_cast<int>(out.size()) < size) {
    std::vector<int> next;
    // Single-qubit gates and barriers pass their successors through to the
    // current level instead of starting a new one.
    std::vector<int> stack;
    for (int g : level)
      for (int s : dag.successors(g)) stack.push_back(s);
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      if (!seen.insert(s).second) continue;
      if (dag.gate(s).is_two_qubit()) {
        next.push_back(s);
      } else {
        for (int t : dag.successors(s)) stack.push_back(t);
      }
    }
    std::sort(next.begin(), next.end());
    for (int g : next) {
      if (static_cast<int>(out.size()) == size) break;
      out.push_back(g);
    }
    level = std::move(next);
  }
  return out;
}

int circuit_depth(const CircuitDag& dag) {
  std::vector<int> wire_depth(static_cast<std::size_t>(dag.num_qubits()), 0);
  int depth = 0;
  for (const Gate& g : dag.gates()) {
    if (g.is_barrier()) continue;
    int d = 0;
    for (int w : g.wires) d = std::max(d, wire_depth[static_cast<std::size_t>(w)]);
    ++d;
    for (int w : g.wires) wire_depth[static_cast<std::size_t>(w)] = d;
    depth = std::max(depth, d);
  }
  return depth;
}

}  // namespace qfab::ir
