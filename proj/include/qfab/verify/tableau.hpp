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
#include <optional>
#include <vector>

#include "qfab/ir/gate.hpp"

namespace qfab::verify {

/// Pauli operator i^phase * prod_q X_q^x[q] Z_q^z[q].
struct Pauli {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  int phase = 0;  // mod 4

  explicit Pauli(int n = 0) : x(static_cast<std::size_t>(n), 0), z(static_cast<std::size_t>(n), 0) {}

  /// this <- this * other.
  void multiply(const Pauli& other);
  bool operator==(const Pauli&) const = default;
};

/// Conjugation images of X_q and Z_q for each wire of a Clifford gate, or
/// nullopt when the gate is not Clifford. Images are over the gate's own
/// wires (1 or 2).
std::optional<std::vector<Pauli>> clifford_images(const ir::Gate& g);

bool is_clifford(const ir::Gate& g);

/// Images U X_q U^dagger (rows 0..n-1) and U Z_q U^dagger (rows n..2n-1).
class Tableau {
 public:
  explicit Tableau(int n);

  int num_qubits() const noexcept { return n_; }
  const std::vector<Pauli>& rows() const noexcept { return rows_; }

  /// Throws ValidationError for non-Clifford gates.
  void apply(const ir::Gate& g);

  /// Move the content of qubit q to position target[q].
  void relabel(const std::vector<int>& target);

  bool operator==(const Tableau&) const = default;

 private:
  int n_;
  std::vector<Pauli> rows_;
};

}  // namespace qfab::verify
