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

#include <string>
#include <utility>
#include <vector>

namespace qfab::freq {

enum class Category { Driven, IntraModule, InterModule };

/// Which frequency combination a term is resonant with (its omega_p).
enum class Resonance {
  QubitPair,           // |w_qb - w_qa|
  SnailHalf,           // w_s / 2
  SnailQubit,          // |w_s - w_qa|
  QubitHalf,           // w_qa / 2
  SnailQubitHalf,      // |w_s - w_qa| / 2
  QubitThird,          // w_qa / 3
  SnailThird,          // w_s / 3
  NeighborSnailHalf,   // w_sn / 2
  SnailNeighborQubit,  // |w_s - w_qc|
  NeighborQubitHalf,   // w_qc / 2
  QubitNeighborQubit,  // |w_qc - w_qa|
  NeighborSnailQubit,  // |w_sn - w_qa|
  NeighborQubitPair,   // |w_qd - w_qc|
};

struct SpectatorTerm {
  Category category;
  std::string operator_form;
  std::string coefficient;
  Resonance resonance;
  double normalized_prefactor;
  /// Counted as a coherent spectator by the allocation cost. SNAIL
  /// subharmonic drives are handled by the incoherent pump limit instead.
  bool coherent;
};

/// Driven, intra-module and inter-module terms, sorted by prefactor within
/// each category.
const std::vector<SpectatorTerm>& spectator_catalog();

/// Qubit and coupler frequencies of one module (Hz). Neighbour-module
/// frequencies are optional; inter-module terms appear only when present.
struct FrequencyAssignment {
  std::vector<double> omega_q;
  double omega_s = 0.0;
  std::vector<double> neighbor_omega_q;
  std::vector<double> neighbor_omega_s;

  int num_qubits() const noexcept { return static_cast<int>(omega_q.size()); }
};

struct Spectator {
  double frequency = 0.0;
  double prefactor = 0.0;
  int term = 0;
  /// Mode labels the term involves (qubit indices; neighbours offset by
  /// the module size; -1 for a SNAIL).
  std::vector<int> modes;
};

/// Every catalog term instantiated on the assignment for a gate driven on
/// `pair`. The driven interaction itself is excluded.
std::vector<Spectator> spectator_frequencies(const FrequencyAssignment& assign,
                                             std::pair<int, int> driven_pair,
                                             const std::vector<SpectatorTerm>& catalog);

}  // namespace qfab::freq
