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

#include "qfab/ir/gate.hpp"

#include <array>
#include <utility>

#include "qfab/common/error.hpp"

namespace qfab::ir {

namespace {

struct NameEntry {
  GateKind kind;
  std::string_view name;
};

constexpr std::array<NameEntry, 18> kNames = {{
    {GateKind::H, "h"},       {GateKind::X, "x"},
    {GateKind::Y, "y"},       {GateKind::Z, "z"},
    {GateKind::S, "s"},       {GateKind::Sdg, "sdg"},
    {GateKind::T, "t"},       {GateKind::Tdg, "tdg"},
    {GateKind::RX, "rx"},     {GateKind::RY, "ry"},
    {GateKind::RZ, "rz"},     {GateKind::U, "u"},
    {GateKind::CX, "cx"},     {GateKind::CZ, "cz"},
    {GateKind::Swap, "swap"}, {GateKind::ISwap, "iswap"},
    {GateKind::ECR, "ecr"},   {GateKind::Barrier, "barrier"},
}};

}  // namespace

bool is_single_qubit_kind(GateKind k) noexcept {
  switch (k) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::S: case GateKind::Sdg: case GateKind::T: case GateKind::Tdg:
    case GateKind::RX: case GateKind::RY: case GateKind::RZ: case GateKind::U:
      return true;
    default:
      return false;
  }
}

bool is_two_qubit_kind(GateKind k) noexcept {
  switch (k) {
    case GateKind::CX: case GateKind::CZ: case GateKind::Swap:
    case GateKind::ISwap: case GateKind::ECR: case GateKind::RootISwap:
    case GateKind::Unitary:
      return true;
    default:
      return false;
  }
}

int param_count(GateKind k) noexcept {
  switch (k) {
    case GateKind::RX: case GateKind::RY: case GateKind::RZ:
      return 1;
    case GateKind::U:
      return 3;
    default:
      return 0;
  }
}

std::string_view kind_name(GateKind k) {
  for (const auto& e : kNames)
    if (e.kind == k) return e.name;
  throw ValidationError("gate kind has no builtin name");
}

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto& e : kNames)
    if (e.name == name) return e.kind;
  return std::nullopt;
}

std::string Gate::qasm_name() const {
  std::string base;
  if (kind == GateKind::RootISwap) {
    base = "riswap_" + std::to_string(root);
  } else if (kind == GateKind::Unitary) {
    base = "unitary";
  } else {
    base = std::string(kind_name(kind));
  }
  return mirrored ? "mirror_" + base : base;
}

void Gate::validate() const {
  if (kind == GateKind::Barrier) {
    if (wires.empty()) throw ValidationError("barrier without wires");
  } else {
    const std::size_t want = is_two_qubit() ? 2 : 1;
    if (wires.size() != want)
      throw ValidationError("gate '" + qasm_name() + "' expects " +
                            std::to_string(want) + " wire(s)");
    if (params.size() != static_cast<std::size_t>(param_count(kind)))
      throw ValidationError("gate '" + qasm_name() + "' has wrong parameter count");
  }
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 0) throw ValidationError("negative wire index");
    for (std::size_t j = i + 1; j < wires.size(); ++j)
      if (wires[i] == wires[j])
        throw ValidationError("gate '" + qasm_name() + "' repeats a wire");
  }
  if (kind == GateKind::RootISwap && root < 1)
    throw ValidationError("root_iswap requires n >= 1");
  if (mirrored && !is_two_qubit())
    throw ValidationError("only two-qubit gates can be mirrored");
  if (kind == GateKind::Unitary) {
    if (!matrix) throw ValidationError("opaque unitary without a matrix");
    const Eigen::Matrix4cd prod = matrix->adjoint() * *matrix;
    if ((prod - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("opaque gate matrix is not unitary");
  }
}

bool same_operation(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || a.wires != b.wires || a.params != b.params ||
      a.mirrored != b.mirrored)
    return false;
  if (a.kind == GateKind::RootISwap && a.root != b.root) return false;
  if (a.kind == GateKind::Unitary) {
    if (!a.matrix || !b.matrix) return a.matrix == b.matrix;
    return *a.matrix == *b.matrix;
  }
  return true;
}

namespace gates {

namespace {
Gate make(GateKind k, std::vector<int> w, std::vector<double> p = {}) {
  Gate g;
  g.kind = k;
  g.wires = std::move(w);
  g.params = std::move(p);
  return g;
}
}  // namespace

Gate h(int q) { return make(GateKind::H, {q}); }
Gate x(int q) { return make(GateKind::X, {q}); }
Gate y(int q) { return make(GateKind::Y, {q}); }
Gate z(int q) { return make(GateKind::Z, {q}); }
Gate s(int q) { return make(GateKind::S, {q}); }
Gate sdg(int q) { return make(GateKind::Sdg, {q}); }
Gate t(int q) { return make(GateKind::T, {q}); }
Gate tdg(int q) { return make(GateKind::Tdg, {q}); }
Gate rx(double theta, int q) { return make(GateKind::RX, {q}, {theta}); }
Gate ry(double theta, int q) { return make(GateKind::RY, {q}, {theta}); }
Gate rz(double theta, int q) { return make(GateKind::RZ, {q}, {theta}); }
Gate u(double theta, double phi, double lambda, int q) {
  return make(GateKind::U, {q}, {theta, phi, lambda});
}
Gate cx(int control, int target) { return make(GateKind::CX, {control, target}); }
Gate cz(int a, int b) { return make(GateKind::CZ, {a, b}); }
Gate swap(int a, int b) { return make(GateKind::Swap, {a, b}); }
Gate iswap(int a, int b) { return make(GateKind::ISwap, {a, b}); }
Gate ecr(int a, int b) { return make(GateKind::ECR, {a, b}); }
Gate root_iswap(int n, int a, int b) {
  Gate g = make(GateKind::RootISwap, {a, b});
  g.root = n;
  return g;
}
Gate unitary(const Eigen::Matrix4cd& m, int a, int b) {
  Gate g = make(GateKind::Unitary, {a, b});
  g.matrix = std::make_shared<const Eigen::Matrix4cd>(m);
  return g;
}
Gate barrier(std::vector<int> wires) {
  return make(GateKind::Barrier, std::move(wires));
}
Gate mirrored(Gate base) {
  base.mirrored = !base.mirrored;
  return base;
}

}  // namespace gates

}  // namespace qfab::ir
