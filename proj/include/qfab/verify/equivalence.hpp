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
#include <vector>

#include "qfab/ir/dag.hpp"
#include "qfab/verify/simulate.hpp"

namespace qfab::verify {

inline constexpr int kMaxUnitaryWidth = 8;
inline constexpr int kMaxStatevectorWidth = 15;

/// A routed circuit rewritten over logical labels.
///
/// SWAP gates become label exchanges and mirrored gates become their base
/// gate followed by a label exchange, so only the reference gates remain.
/// Positions [0, num_logical) are the logical qubits; later positions are
/// ancillas that start in |0> and must end there. `output_target[s]` is the
/// output position the content of position s is claimed to occupy.
struct SlotProgram {
  int width = 0;
  int num_logical = 0;
  std::vector<ir::Gate> gates;
  std::vector<int> output_target;
};

/// `initial` and `final` map physical wire -> logical label of the routed
/// circuit; labels >= ref.num_qubits() are idle placeholders.
SlotProgram to_slot_program(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                            const ir::WirePermutation& initial,
                            const ir::WirePermutation& final);

/// Full-matrix comparison up to global phase (n <= 8).
bool unitary_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                        const ir::WirePermutation& initial, const ir::WirePermutation& final,
                        double tol = 1e-8);
bool unitary_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                        const ir::WirePermutation& final, double tol = 1e-8);

/// |<psi| U_ref^dagger P U_routed |psi>| >= 1 - tol on seeded Haar states.
bool statevector_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                            const ir::WirePermutation& initial, const ir::WirePermutation& final,
                            int num_states = 8, double tol = 1e-8, std::uint64_t seed = 0);
bool statevector_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                            const ir::WirePermutation& final, int num_states = 8,
                            double tol = 1e-8, std::uint64_t seed = 0);

/// Exact stabilizer-tableau comparison. Throws ValidationError when either
/// circuit contains a non-Clifford gate.
bool clifford_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                         const ir::WirePermutation& initial, const ir::WirePermutation& final);
bool clifford_equivalent(const ir::CircuitDag& ref, const ir::CircuitDag& routed,
                         const ir::WirePermutation& final);

bool is_clifford_circuit(const ir::CircuitDag& dag);

/// Reference inputs and outputs shared by many statevector checks of
/// routings of the same circuit.
class StatevectorOracle {
 public:
  StatevectorOracle(const ir::CircuitDag& ref, int num_states = 8, std::uint64_t seed = 0);

  bool check(const ir::CircuitDag& routed, const ir::WirePermutation& initial,
             const ir::WirePermutation& final, double tol = 1e-8) const;

  /// Smallest |<ref psi|routed psi>| over the states.
  double min_overlap(const ir::CircuitDag& routed, const ir::WirePermutation& initial,
                     const ir::WirePermutation& final) const;

 private:
  const ir::CircuitDag* ref_;
  StateBatch inputs_;
  StateBatch outputs_;
};

}  // namespace qfab::verify
