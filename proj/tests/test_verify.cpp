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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "qfab/common/error.hpp"
#include "qfab/ir/dag.hpp"
#include "qfab/verify/equivalence.hpp"
#include "qfab/verify/simulate.hpp"
#include "qfab/verify/tableau.hpp"

using namespace qfab;
using namespace qfab::ir;
using namespace qfab::verify;

namespace {

WirePermutation perm(std::vector<int> p) { return {std::move(p)}; }

CircuitDag random_circuit(Rng& rng, int n, int len, bool clifford) {
  std::vector<Gate> g;
  for (int i = 0; i < len; ++i) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    const auto r = rng.below(clifford ? 6 : 8);
    switch (r) {
      case 0: g.push_back(gates::h(a)); break;
      case 1: g.push_back(gates::s(a)); break;
      case 2: g.push_back(gates::cx(a, b)); break;
      case 3: g.push_back(gates::cz(a, b)); break;
      case 4: g.push_back(gates::iswap(a, b)); break;
      case 5: g.push_back(gates::sdg(a)); break;
      case 6: g.push_back(gates::rz(rng.uniform(-3, 3), a)); break;
      default: g.push_back(gates::root_iswap(2, a, b)); break;
    }
  }
  return CircuitDag(n, std::move(g));
}

struct FakeRouting {
  CircuitDag routed;
  std::vector<int> initial;  // physical -> logical
  std::vector<int> final;
};

/// Replays `ref` on `big` physical wires from a random layout, inserting
/// random swaps and mirrored gates. Connectivity is ignored.
FakeRouting fake_route(const CircuitDag& ref, int big, Rng& rng) {
  std::vector<int> l2p(static_cast<std::size_t>(big));
  std::iota(l2p.begin(), l2p.end(), 0);
  for (int i = big - 1; i > 0; --i)
    std::swap(l2p[static_cast<std::size_t>(i)], l2p[rng.below(static_cast<std::uint64_t>(i + 1))]);
  Layout layout(l2p);
  FakeRouting out;
  out.initial = layout.physical_to_logical();
  std::vector<Gate> gates;
  for (const Gate& g : ref.gates()) {
    if (rng.below(3) == 0) {
      const int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(big)));
      int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(big - 1)));
      if (q >= p) ++q;
      gates.push_back(gates::swap(p, q));
      layout.swap_physical(p, q);
    }
    Gate h = g;
    for (int& w : h.wires) w = layout.physical(w);
    if (h.is_two_qubit() && rng.below(3) == 0) {
      const int p = h.wires[0], q = h.wires[1];
      gates.push_back(gates::mirrored(h));
      layout.swap_physical(p, q);
    } else {
      gates.push_back(h);
    }
  }
  out.routed = CircuitDag(big, std::move(gates));
  out.final = layout.physical_to_logical();
  return out;
}

}  // namespace

TEST_CASE("identical circuits are equivalent") {
  const CircuitDag ref(2, {gates::h(0), gates::cx(0, 1), gates::t(1)});
  const auto id = WirePermutation::identity(2);
  CHECK(unitary_equivalent(ref, ref, id));
  for (std::uint64_t seed : {0u, 1u, 99u}) CHECK(statevector_equivalent(ref, ref, id, 8, 1e-8, seed));
}

TEST_CASE("swap followed by an output permutation cancels") {
  const CircuitDag ref(2, {gates::cx(0, 1)});
  const CircuitDag routed(2, {gates::cx(0, 1), gates::swap(0, 1)});
  CHECK(unitary_equivalent(ref, routed, perm({1, 0})));
  CHECK(statevector_equivalent(ref, routed, perm({1, 0})));
  CHECK(clifford_equivalent(ref, routed, perm({1, 0})));
  CHECK_FALSE(unitary_equivalent(ref, routed, perm({0, 1})));
}

TEST_CASE("negative controls") {
  const CircuitDag ref(3, {gates::h(0), gates::cx(0, 1), gates::cx(1, 2), gates::t(2)});
  const auto id = WirePermutation::identity(3);
  const CircuitDag deleted(3, {gates::h(0), gates::cx(0, 1), gates::t(2)});
  CHECK_FALSE(unitary_equivalent(ref, deleted, id));
  CHECK_FALSE(statevector_equivalent(ref, deleted, id));
  std::vector<Gate> extra = ref.gates();
  extra.push_back(gates::t(0));
  CHECK_FALSE(statevector_equivalent(ref, CircuitDag(3, extra), id));
  CHECK_FALSE(unitary_equivalent(ref, CircuitDag(3, extra), id));

  const CircuitDag cref(2, {gates::h(0), gates::cx(0, 1)});
  const CircuitDag flipped(2, {gates::h(0), gates::cx(1, 0)});
  CHECK_FALSE(clifford_equivalent(cref, flipped, WirePermutation::identity(2)));
  CHECK_THROWS_AS(clifford_equivalent(ref, ref, id), ValidationError);
}

TEST_CASE("global phase is ignored") {
  const CircuitDag a(1, {gates::rz(0.4, 0)});
  const CircuitDag b(1, {gates::u(0, 0, 0.4, 0)});
  CHECK(unitary_equivalent(a, b, WirePermutation::identity(1)));
  CHECK(statevector_equivalent(a, b, WirePermutation::identity(1)));
}

TEST_CASE("width limits") {
  const CircuitDag big(9, {gates::h(0)});
  CHECK_THROWS_AS(unitary_equivalent(big, big, WirePermutation::identity(9)), ValidationError);
  const CircuitDag huge(16, {gates::h(0)});
  CHECK_THROWS_AS(statevector_equivalent(huge, huge, WirePermutation::identity(16)),
                  ValidationError);
}

TEST_CASE("GHZ-19 routed through swaps passes the tableau check") {
  std::vector<Gate> ref{gates::h(0)};
  for (int q = 0; q + 1 < 19; ++q) ref.push_back(gates::cx(q, q + 1));
  const CircuitDag dag(19, ref);
  Rng rng(19);
  const FakeRouting r = fake_route(dag, 21, rng);
  CHECK(clifford_equivalent(dag, r.routed, perm(r.initial), perm(r.final)));
  std::vector<int> wrong = r.final;
  std::swap(wrong[0], wrong[1]);
  CHECK_FALSE(clifford_equivalent(dag, r.routed, perm(r.initial), perm(wrong)));
}

TEST_CASE("all methods agree with the dense oracle on synthetic routings") {
  Rng rng(31);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const bool clifford = trial % 2 == 0;
    const int n = 2 + static_cast<int>(rng.below(4));
    const int big = n + static_cast<int>(rng.below(3));
    const CircuitDag ref = random_circuit(rng, n, 25, clifford);
    FakeRouting r = fake_route(ref, big, rng);
    if (trial % 4 >= 2) {
      // Tamper: drop one two-qubit gate or corrupt the output permutation.
      std::vector<Gate> g = r.routed.gates();
      if (trial % 8 < 4) {
        const auto it = std::find_if(g.begin(), g.end(), [](const Gate& x) {
          return x.is_two_qubit() && x.kind != GateKind::Swap;
        });
        if (it != g.end()) g.erase(it);
        r.routed = CircuitDag(big, g);
      } else {
        std::swap(r.final[0], r.final[1]);
      }
    }
    const bool expect =
        oracle::routed_matches(n, ref.gates(), big, r.routed.gates(), r.initial, r.final);
    expect ? ++positives : ++negatives;
    CAPTURE(trial);
    CHECK(unitary_equivalent(ref, r.routed, perm(r.initial), perm(r.final)) == expect);
    CHECK(statevector_equivalent(ref, r.routed, perm(r.initial), perm(r.final), 8, 1e-8,
                                 static_cast<std::uint64_t>(trial)) == expect);
    if (clifford)
      CHECK(clifford_equivalent(ref, r.routed, perm(r.initial), perm(r.final)) == expect);
  }
  CHECK(positives >= 15);
  CHECK(negatives >= 10);
}

TEST_CASE("simulator matches the dense oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const CircuitDag c = random_circuit(rng, 4, 30, false);
    StateBatch s = haar_states(4, 3, static_cast<std::uint64_t>(trial));
    const StateBatch in = s;
    apply_gates(s, 4, c.gates());
    const auto u = oracle::dense_unitary(4, c.gates());
    CHECK((s - StateBatch(u * in)).norm() < 1e-10);
  }
}

TEST_CASE("Haar states are normalized and seeded") {
  const StateBatch a = haar_states(5, 8, 3);
  const StateBatch b = haar_states(5, 8, 3);
  const StateBatch c = haar_states(5, 8, 4);
  CHECK(a == b);
  CHECK(a != c);
  for (Eigen::Index k = 0; k < a.cols(); ++k) CHECK(a.col(k).norm() == doctest::Approx(1.0));
}

TEST_CASE("tableau images of standard gates") {
  CHECK(is_clifford(gates::h(0)));
  CHECK(is_clifford(gates::iswap(0, 1)));
  CHECK_FALSE(is_clifford(gates::t(0)));
  CHECK_FALSE(is_clifford(gates::root_iswap(2, 0, 1)));
  CHECK(is_clifford(gates::rz(oracle::kPi / 2, 0)));
  Tableau t(2);
  t.apply(gates::h(0));
  t.apply(gates::h(0));
  CHECK(t == Tableau(2));
  CHECK_THROWS_AS(t.apply(gates::t(0)), ValidationError);
}
