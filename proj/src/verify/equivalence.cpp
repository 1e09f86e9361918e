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

#include "qfab/verify/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qfab/common/error.hpp"
#include "qfab/verify/tableau.hpp"

namespace qfab::verify {

using C = std::complex<double>;
using ir::CircuitDag;
using ir::WirePermutation;

namespace {

constexpr int kMaxSimWidth = 22;

void check_perm(const WirePermutation& p, int n, const char* what) {
  if (p.size() != n || !p.is_bijection())
    throw ValidationError(std::string(what) + " permutation is not a bijection over " +
                          std::to_string(n) + " wires");
}

// Index in the simulated (pre-relabel) frame holding output index i.
std::size_t source_index(std::size_t i, const std::vector<int>& target) {
  std::size_t j = 0;
  for (std::size_t s = 0; s < target.size(); ++s)
    if ((i >> target[s]) & 1U) j |= std::size_t{1} << s;
  return j;
}

StateBatch embed(const StateBatch& in, int width) {
  StateBatch out = StateBatch::Zero(Eigen::Index{1} << width, in.cols());
  out.topRows(in.rows()) = in;
  return out;
}

}  // namespace

SlotProgram to_slot_program(const CircuitDag& ref, const CircuitDag& routed,
                            const WirePermutation& initial, const WirePermutation& final) {
  const int n = ref.num_qubits();
  const int big = routed.num_qubits();
  if (big < n) throw ValidationError("routed circuit is narrower than the reference");
  check_perm(initial, big, "initial");
  check_perm(final, big, "final");

  std::vector<int> slot_of = initial.physical_to_logical;
  std::vector<ir::Gate> gates;
  std::set<int> touched;
  for (const ir::Gate& g : routed.gates()) {
    if (g.is_barrier()) continue;
    if (g.kind == ir::GateKind::Swap) {
      std::swap(slot_of[static_cast<std::size_t>(g.wires[0])],
                slot_of[static_cast<std::size_t>(g.wires[1])]);
      if (g.mirrored)
        std::swap(slot_of[static_cast<std::size_t>(g.wires[0])],
                  slot_of[static_cast<std::size_t>(g.wires[1])]);
      continue;
    }
    ir::Gate h = g;
    h.mirrored = false;
    for (int& w : h.wires) {
      w = slot_of[static_cast<std::size_t>(w)];
      if (w >= n) touched.insert(w);
    }
    gates.push_back(std::move(h));
    if (g.mirrored)
      std::swap(slot_of[static_cast<std::size_t>(g.wires[0])],
                slot_of[static_cast<std::size_t>(g.wires[1])]);
  }

  std::vector<int> pi(static_cast<std::size_t>(big));
  for (int p = 0; p < big; ++p)
    pi[static_cast<std::size_t>(slot_of[static_cast<std::size_t>(p)])] =
        final.physical_to_logical[static_cast<std::size_t>(p)];

  std::set<int> active;
  for (int s = 0; s < n; ++s) active.insert(s);
  active.insert(touched.begin(), touched.end());
  for (int s : std::vector<int>(active.begin(), active.end())) {
    for (int t = pi[static_cast<std::size_t>(s)]; t != s; t = pi[static_cast<std::size_t>(t)])
      active.insert(t);
  }
  std::vector<int> pos(static_cast<std::size_t>(big), -1);
  int next = 0;
  for (int s : active) pos[static_cast<std::size_t>(s)] = next++;

  SlotProgram prog;
  prog.width = next;
  prog.num_logical = n;
  for (ir::Gate& g : gates)
    for (int& w : g.wires) w = pos[static_cast<std::size_t>(w)];
  prog.gates = std::move(gates);
  prog.output_target.resize(static_cast<std::size_t>(next));
  for (int s : active)
    prog.output_target[static_cast<std::size_t>(pos[static_cast<std::size_t>(s)])] =
        pos[static_cast<std::size_t>(pi[static_cast<std::size_t>(s)])];
  return prog;
}

bool unitary_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                        const WirePermutation& initial, const WirePermutation& final, double tol) {
  const int n = ref.num_qubits();
  if (n > kMaxUnitaryWidth)
    throw ValidationError("unitary comparison limited to " + std::to_string(kMaxUnitaryWidth) +
                          " qubits");
  const SlotProgram prog = to_slot_program(ref, routed, initial, final);
  if (prog.width > kMaxSimWidth) throw ValidationError("simulation width exceeds limit");

  StateBatch expected = basis_states(n);
  apply_gates(expected, n, ref.gates());
  StateBatch actual = embed(basis_states(n), prog.width);
  apply_gates(actual, prog.width, prog.gates);

  // Global phase from the largest reference entry.
  Eigen::Index r = 0, c = 0;
  expected.cwiseAbs().maxCoeff(&r, &c);
  const std::size_t rows = static_cast<std::size_t>(actual.rows());
  const C a = actual(static_cast<Eigen::Index>(source_index(static_cast<std::size_t>(r),
                                                            prog.output_target)),
                     c);
  const C phase = a / expected(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto j = static_cast<Eigen::Index>(source_index(i, prog.output_target));
    for (Eigen::Index k = 0; k < actual.cols(); ++k) {
      const C e = i < static_cast<std::size_t>(expected.rows())
                      ? phase * expected(static_cast<Eigen::Index>(i), k)
                      : C(0);
      if (std::abs(actual(j, k) - e) > tol) return false;
    }
  }
  return true;
}

bool unitary_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                        const WirePermutation& final, double tol) {
  return unitary_equivalent(ref, routed, WirePermutation::identity(routed.num_qubits()), final,
                            tol);
}

StatevectorOracle::StatevectorOracle(const CircuitDag& ref, int num_states, std::uint64_t seed)
    : ref_(&ref) {
  const int n = ref.num_qubits();
  if (n > kMaxStatevectorWidth)
    throw ValidationError("statevector comparison limited to " +
                          std::to_string(kMaxStatevectorWidth) + " qubits");
  if (num_states < 1) throw ValidationError("need at least one state");
  inputs_ = haar_states(n, num_states, seed);
  outputs_ = inputs_;
  apply_gates(outputs_, n, ref.gates());
}

double StatevectorOracle::min_overlap(const CircuitDag& routed, const WirePermutation& initial,
                                      const WirePermutation& final) const {
  const SlotProgram prog = to_slot_program(*ref_, routed, initial, final);
  if (prog.width > kMaxSimWidth) throw ValidationError("simulation width exceeds limit");
  StateBatch actual = embed(inputs_, prog.width);
  apply_gates(actual, prog.width, prog.gates);
  const Eigen::Index cols = outputs_.cols();
  std::vector<C> acc(static_cast<std::size_t>(cols), C(0));
  for (Eigen::Index i = 0; i < outputs_.rows(); ++i) {
    const auto j = static_cast<Eigen::Index>(
        source_index(static_cast<std::size_t>(i), prog.output_target));
    for (Eigen::Index k = 0; k < cols; ++k)
      acc[static_cast<std::size_t>(k)] += std::conj(outputs_(i, k)) * actual(j, k);
  }
  double worst = 1.0;
  for (const C& v : acc) worst = std::min(worst, std::abs(v));
  return worst;
}

bool StatevectorOracle::check(const CircuitDag& routed, const WirePermutation& initial,
                              const WirePermutation& final, double tol) const {
  return min_overlap(routed, initial, final) >= 1.0 - tol;
}

bool statevector_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                            const WirePermutation& initial, const WirePermutation& final,
                            int num_states, double tol, std::uint64_t seed) {
  return StatevectorOracle(ref, num_states, seed).check(routed, initial, final, tol);
}

bool statevector_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                            const WirePermutation& final, int num_states, double tol,
                            std::uint64_t seed) {
  return statevector_equivalent(ref, routed, WirePermutation::identity(routed.num_qubits()),
                                final, num_states, tol, seed);
}

bool is_clifford_circuit(const CircuitDag& dag) {
  return std::all_of(dag.gates().begin(), dag.gates().end(),
                     [](const ir::Gate& g) { return is_clifford(g); });
}

bool clifford_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                         const WirePermutation& initial, const WirePermutation& final) {
  if (!is_clifford_circuit(ref) || !is_clifford_circuit(routed))
    throw ValidationError("non-Clifford gate present");
  const SlotProgram prog = to_slot_program(ref, routed, initial, final);
  Tableau expected(prog.width);
  for (const ir::Gate& g : ref.gates()) expected.apply(g);
  Tableau actual(prog.width);
  for (const ir::Gate& g : prog.gates) actual.apply(g);
  actual.relabel(prog.output_target);
  return actual == expected;
}

bool clifford_equivalent(const CircuitDag& ref, const CircuitDag& routed,
                         const WirePermutation& final) {
  return clifford_equivalent(ref, routed, WirePermutation::identity(routed.num_qubits()), final);
}

}  // namespace qfab::verify
