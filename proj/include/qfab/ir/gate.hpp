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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qfab::ir {

enum class GateKind {
  // single qubit
  H, X, Y, Z, S, Sdg, T, Tdg, RX, RY, RZ, U,
  // two qubit
  CX, CZ, Swap, ISwap, ECR, RootISwap, Unitary,
  Barrier,
};

bool is_single_qubit_kind(GateKind k) noexcept;
bool is_two_qubit_kind(GateKind k) noexcept;

/// Number of real parameters a kind takes (0, 1, or 3).
int param_count(GateKind k) noexcept;

/// QASM name of a builtin kind ("cx", "rz", ...). Not defined for
/// RootISwap, Unitary, or mirrored gates; see `qasm_name`.
std::string_view kind_name(GateKind k);

/// Inverse of `kind_name` for builtin names.
std::optional<GateKind> kind_from_name(std::string_view name);

/// One operation of a circuit.
///
/// A mirrored gate stands for SWAP * U(base): the base gate followed by a
/// swap of its two wires, executed as a single native operation.
struct Gate {
  int id = 0;
  GateKind kind = GateKind::H;
  std::vector<int> wires;
  std::vector<double> params;
  /// n of the n-th root of iSWAP; only meaningful for RootISwap.
  int root = 0;
  bool mirrored = false;
  /// Matrix of an opaque two-qubit gate (row/col index = 2*bit(w0) + bit(w1)).
  std::shared_ptr<const Eigen::Matrix4cd> matrix;

  bool is_single_qubit() const noexcept { return is_single_qubit_kind(kind); }
  bool is_two_qubit() const noexcept { return is_two_qubit_kind(kind); }
  bool is_barrier() const noexcept { return kind == GateKind::Barrier; }

  /// Name used in serialized output, e.g. "cx", "riswap_2", "mirror_cx".
  std::string qasm_name() const;

  /// Throws ValidationError when the gate breaks its invariants.
  void validate() const;
};

/// True when two gates describe the same operation (ids ignored).
bool same_operation(const Gate& a, const Gate& b);

namespace gates {

Gate h(int q);
Gate x(int q);
Gate y(int q);
Gate z(int q);
Gate s(int q);
Gate sdg(int q);
Gate t(int q);
Gate tdg(int q);
Gate rx(double theta, int q);
Gate ry(double theta, int q);
Gate rz(double theta, int q);
Gate u(double theta, double phi, double lambda, int q);
Gate cx(int control, int target);
Gate cz(int a, int b);
Gate swap(int a, int b);
Gate iswap(int a, int b);
Gate ecr(int a, int b);
Gate root_iswap(int n, int a, int b);
Gate unitary(const Eigen::Matrix4cd& m, int a, int b);
Gate barrier(std::vector<int> wires);
Gate mirrored(Gate base);

}  // namespace gates

}  // namespace qfab::ir
