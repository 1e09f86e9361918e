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

#include <span>
#include <utility>
#include <vector>

#include "qfab/ir/gate.hpp"

namespace qfab::ir {

/// Immutable dependency graph of a circuit.
///
/// Gate ids equal their position in program order. Arcs join each gate to
/// the nearest later gate on each of its wires (no transitive closure), so a
/// gate has at most |wires| predecessors and successors.
class CircuitDag {
 public:
  CircuitDag() = default;
  CircuitDag(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return gates_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& gate(int id) const { return gates_.at(static_cast<std::size_t>(id)); }

  std::span<const int> successors(int id) const {
    return succ_.at(static_cast<std::size_t>(id));
  }
  std::span<const int> predecessors(int id) const {
    return pred_.at(static_cast<std::size_t>(id));
  }

  /// All arcs (from, to), ordered by `from` then `to`.
  std::vector<std::pair<int, int>> arcs() const;

  std::size_t two_qubit_count() const noexcept;

  /// Same gates in reverse program order.
  CircuitDag reversed() const;

 private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
};

/// Physical-output-wire -> logical-wire map.
struct WirePermutation {
  std::vector<int> physical_to_logical;

  static WirePermutation identity(int n);
  bool is_bijection() const;
  int size() const noexcept { return static_cast<int>(physical_to_logical.size()); }
  bool operator==(const WirePermutation&) const = default;
};

/// Bijective logical <-> physical assignment. Logical indices past the
/// circuit width act as idle placeholders so the map is always total.
class Layout {
 public:
  Layout() = default;
  /// `logical_to_physical[l]` is the physical qubit holding logical l.
  explicit Layout(std::vector<int> logical_to_physical);

  static Layout identity(int n);

  int size() const noexcept { return static_cast<int>(l2p_.size()); }
  int physical(int logical) const { return l2p_.at(static_cast<std::size_t>(logical)); }
  int logical(int physical) const { return p2l_.at(static_cast<std::size_t>(physical)); }
  const std::vector<int>& logical_to_physical() const noexcept { return l2p_; }
  const std::vector<int>& physical_to_logical() const noexcept { return p2l_; }

  /// Exchange the logical qubits sitting on two physical qubits.
  void swap_physical(int p, int q);

  WirePermutation as_permutation() const { return {p2l_}; }
  bool operator==(const Layout&) const = default;

 private:
  std::vector<int> l2p_;
  std::vector<int> p2l_;
};

/// Unexecuted, non-barrier gates whose predecessors are all executed, in id
/// order. `executed` is indexed by gate id and must be downward closed.
std::vector<int> front_layer(const CircuitDag& dag,
                             const std::vector<bool>& executed);

/// Up to `size` two-qubit successors of `front`, breadth first. Single-qubit
/// gates and barriers are traversed but not counted as a level. Order: level,
/// then gate id.
std::vector<int> extended_set(const CircuitDag& dag, std::span<const int> front,
                              int size);

/// Longest path in gates, barriers excluded.
int circuit_depth(const CircuitDag& dag);

}  // namespace qfab::ir
